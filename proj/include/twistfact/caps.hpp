#pragma once

#include <cstdint>
#include <string>

namespace twistfact {

struct Caps {
    std::uint64_t carrier = 65536;       // largest |R| accepted by ring_parse
    std::uint64_t closure = 4'000'000;   // largest group built by closure / enumeration
    std::uint64_t search = 50'000'000;   // node budget for brute-force searches

    // Reads TWISTFACT_CAP: either a bare integer (carrier) or
    // "carrier=N,closure=M,search=S" with any subset of keys.
    static Caps from_env();
    static Caps parse(const std::string& text);
};

}  // namespace twistfact
