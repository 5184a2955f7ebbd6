#include "twistfact/apair.hpp"

#include "twistfact/error.hpp"

namespace twistfact {

bool is_admissible(const InvolutiveRing& r, Elem t, Elem u) { return r.norm(t) == r.trace(u); }

APair apair_make(const InvolutiveRing& r, Elem t, Elem u) {
    if (!is_admissible(r, t, u))
        throw InputError("(" + r.format(t) + ", " + r.format(u) + ") is not admissible: t*bar(t) = " +
                         r.format(r.norm(t)) + " but u+bar(u) = " + r.format(r.trace(u)));
    return {t, u};
}

APair apair_compose(const InvolutiveRing& r, const APair& p, const APair& q) {
    return {r.add(p.t, q.t), r.add(r.add(p.u, q.u), r.mul(r.theta(p.t), q.t))};
}

APair apair_inverse(const InvolutiveRing& r, const APair& p) { return {r.neg(p.t), r.theta(p.u)}; }

APair apair_scale(const InvolutiveRing& r, Elem s, const APair& p) {
    return {r.mul(s, p.t), r.mul(r.norm(s), p.u)};
}

std::vector<APairEntry> apair_enumerate(const InvolutiveRing& r) {
    // bucket u by its trace, then each t pairs with the bucket of its norm
    std::vector<std::vector<Elem>> by_trace(r.size());
    for (Elem u : r.elements()) by_trace[r.trace(u).id].push_back(u);
    std::vector<APairEntry> out;
    for (Elem t : r.elements())
        for (Elem u : by_trace[r.norm(t).id]) out.push_back({{t, u}, r.is_unit(u)});
    return out;
}

std::vector<APair> apair_list(const InvolutiveRing& r, bool star_only) {
    std::vector<APair> out;
    for (const auto& e : apair_enumerate(r))
        if (!star_only || e.star) out.push_back(e.pair);
    return out;
}

}  // namespace twistfact
