#pragma once

#include <vector>

#include "twistfact/ring.hpp"

namespace twistfact {

// (t,u) with t*bar(t) = u + bar(u).
struct APair {
    Elem t, u;
    friend constexpr auto operator<=>(const APair&, const APair&) = default;
};

bool is_admissible(const InvolutiveRing& r, Elem t, Elem u);
// Throws InputError naming both sides of the defining equation when it fails.
APair apair_make(const InvolutiveRing& r, Elem t, Elem u);
// (t,u) + (t',u') = (t+t', u+u'+bar(t)t')
APair apair_compose(const InvolutiveRing& r, const APair& p, const APair& q);
APair apair_inverse(const InvolutiveRing& r, const APair& p);
APair apair_scale(const InvolutiveRing& r, Elem s, const APair& p);
inline bool apair_is_star(const InvolutiveRing& r, const APair& p) { return r.is_unit(p.u); }
inline bool apair_is_zero(const APair& p) { return p.t.id == 0 && p.u.id == 0; }

struct APairEntry {
    APair pair;
    bool star;  // u is a unit
};

// All admissible pairs, t-major then u, in canonical element order.
std::vector<APairEntry> apair_enumerate(const InvolutiveRing& r);
std::vector<APair> apair_list(const InvolutiveRing& r, bool star_only = false);

}  // namespace twistfact
