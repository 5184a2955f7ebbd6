#include <algorithm>
#include <set>
#include <unordered_set>

#include "twistfact/error.hpp"
#include "twistfact/su3.hpp"

namespace twistfact::su3 {

std::vector<Matrix> generators(const InvolutiveRing& r) {
    std::vector<Matrix> g;
    for (const auto& p : apair_list(r)) {
        if (apair_is_zero(p)) continue;
        g.push_back(x_plus(r, p));
        g.push_back(x_minus(r, p));
    }
    for (Elem u : r.members(Subset::units))
        if (u != r.one()) g.push_back(h_elem(r, u));
    g.push_back(w_elem(r, r.one()));
    return g;
}

namespace {

// Greedy generating set of a finite group given as a list with identity first, in list order.
template <class T, class Op>
std::vector<T> greedy_generators(const std::vector<T>& all, Op op) {
    std::set<T> sub{all.front()};
    std::vector<T> gens;
    for (const auto& x : all) {
        if (sub.count(x)) continue;
        gens.push_back(x);
        std::vector<T> queue(sub.begin(), sub.end());
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (const auto& g : gens) {
                T y = op(queue[i], g);
                if (sub.insert(y).second) queue.push_back(y);
            }
    }
    return gens;
}

}  // namespace

std::vector<Matrix> small_generators(const InvolutiveRing& r) {
    std::vector<Matrix> g;
    auto pairs = greedy_generators(apair_list(r), [&](const APair& a, const APair& b) { return apair_compose(r, b, a); });
    for (const auto& p : pairs) {
        g.push_back(x_plus(r, p));
        g.push_back(x_minus(r, p));
    }
    std::vector<Elem> units{r.one()};
    for (Elem u : r.members(Subset::units))
        if (u != r.one()) units.push_back(u);
    for (Elem u : greedy_generators(units, [&](Elem a, Elem b) { return r.mul(a, b); })) g.push_back(h_elem(r, u));
    g.push_back(w_elem(r, r.one()));
    return g;
}

std::vector<Matrix> su3_enumerate(const InvolutiveRing& r, const Caps& caps) {
    auto gens = small_generators(r);
    std::unordered_set<Matrix, MatrixHash> seen;
    std::vector<Matrix> queue{mat::identity(r, 3)};
    seen.insert(queue.front());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& g : gens) {
            Matrix m = mat::mul(r, queue[head], g);
            if (seen.insert(m).second) {
                if (queue.size() >= caps.closure)
                    throw CapExceeded("SU(3," + r.spec() + ") closure exceeds the cap of " +
                                      std::to_string(caps.closure));
                queue.push_back(m);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

std::vector<Matrix> sigma_fixed_scan(const InvolutiveRing& r) {
    if (r.size() > 4) throw CapExceeded("sigma-fixed scan is limited to rings with at most 4 elements");
    const std::uint32_t n = r.size();
    std::uint64_t total = 1;
    for (int i = 0; i < 9; ++i) total *= n;
    std::vector<Matrix> out;
    Matrix m(3);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        // most significant digit first so the output is already in canonical order
        for (int idx = 8; idx >= 0; --idx) {
            m(idx / 3, idx % 3) = Elem{static_cast<std::uint32_t>(c % n)};
            c /= n;
        }
        if (mat::det(r, m) == r.one() && mat::preserves_form(r, m)) out.push_back(m);
    }
    return out;
}

}  // namespace twistfact::su3
