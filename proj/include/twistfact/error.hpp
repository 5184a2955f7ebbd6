#pragma once

#include <stdexcept>
#include <string>

namespace twistfact {

// Bad user input: malformed spec, literal, word, or out-of-range parameter.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A ring lacks the property an algorithm requires (SR1, SSR1, theta-completeness, ...).
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured size limit would be exceeded.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An algorithm produced something that fails its own re-multiplication check.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace twistfact
