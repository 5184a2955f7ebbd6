#pragma once

#include <string>
#include <vector>

#include "twistfact/ring.hpp"

namespace tt {

inline twistfact::InvolutiveRing ring(const std::string& spec) { return twistfact::InvolutiveRing::parse(spec); }

inline twistfact::Elem el(const twistfact::InvolutiveRing& r, const std::string& lit) { return r.parse_element(lit); }

inline std::vector<std::string> formatted(const twistfact::InvolutiveRing& r, const std::vector<twistfact::Elem>& xs) {
    std::vector<std::string> out;
    for (auto e : xs) out.push_back(r.format(e));
    return out;
}

}  // namespace tt
