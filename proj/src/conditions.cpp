#include "twistfact/conditions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "twistfact/error.hpp"
#include "twistfact/su3.hpp"

namespace twistfact {

ElementSet ElementSet::from_mask(std::vector<char> mask) {
    ElementSet s;
    for (std::uint32_t i = 0; i < mask.size(); ++i)
        if (mask[i]) s.members.push_back(Elem{i});
    s.mask = std::move(mask);
    return s;
}

MaximalIdealList maximal_ideals(const InvolutiveRing& r) {
    const auto n = r.size();
    const auto all = r.elements();

    // Jacobson radical: 1 + x*s is a unit for every s
    std::vector<char> jac(n, 0);
    for (Elem x : all) {
        bool ok = true;
        for (Elem s : all)
            if (!r.is_unit(r.add(r.one(), r.mul(x, s)))) {
                ok = false;
                break;
            }
        jac[x.id] = ok;
    }
    auto in_jac = [&](Elem x) { return jac[x.id] != 0; };

    // idempotents of R/Jac, one representative per class
    std::vector<Elem> reps;
    for (Elem e : all) {
        if (!in_jac(r.sub(r.mul(e, e), e)) || in_jac(e)) continue;
        bool fresh = std::none_of(reps.begin(), reps.end(), [&](Elem f) { return in_jac(r.sub(e, f)); });
        if (fresh) reps.push_back(e);
    }
    std::vector<Elem> primitive;
    for (Elem e : reps) {
        bool prim = true;
        for (Elem f : reps) {
            if (in_jac(r.sub(f, e))) continue;
            // f below e: f e = f modulo Jac
            if (in_jac(r.sub(r.mul(f, e), f))) {
                prim = false;
                break;
            }
        }
        if (prim) primitive.push_back(e);
    }

    MaximalIdealList out;
    for (Elem e : primitive) {
        std::vector<char> mask(n, 0);
        for (Elem x : all) mask[x.id] = in_jac(r.mul(x, e));
        out.ideals.push_back(ElementSet::from_mask(std::move(mask)));
    }
    std::sort(out.ideals.begin(), out.ideals.end(),
              [](const ElementSet& a, const ElementSet& b) { return a.members < b.members; });
    out.jacobson = ElementSet::from_mask(std::move(jac));
    return out;
}

ElementSet j_r_set(const InvolutiveRing& r, Elem x, const MaximalIdealList& ideals) {
    std::vector<char> mask(r.size(), 1);
    for (const auto& m : ideals.ideals) {
        if (m.contains(x)) {
            for (std::uint32_t i = 0; i < r.size(); ++i)
                if (m.mask[i]) mask[i] = 0;
        } else {
            for (std::uint32_t i = 0; i < r.size(); ++i)
                if (!m.mask[i]) mask[i] = 0;
        }
    }
    return ElementSet::from_mask(std::move(mask));
}

bool is_unimodular(const InvolutiveRing&, Elem a, Elem b, const MaximalIdealList& ideals) {
    return std::none_of(ideals.ideals.begin(), ideals.ideals.end(),
                        [&](const ElementSet& m) { return m.contains(a) && m.contains(b); });
}

std::optional<Elem> sr1_solve(const InvolutiveRing& r, Elem a, Elem b, const std::vector<Elem>& domain) {
    if (domain.empty()) {
        for (std::uint32_t z = 0; z < r.size(); ++z)
            if (r.is_unit(r.add(a, r.mul(b, Elem{z})))) return Elem{z};
        return std::nullopt;
    }
    for (Elem z : domain)
        if (r.is_unit(r.add(a, r.mul(b, z)))) return z;
    return std::nullopt;
}

namespace {

bool sr1_over(const InvolutiveRing& r, const std::vector<Elem>& domain, const MaximalIdealList& ideals) {
    for (Elem a : domain) {
        if (r.is_unit(a)) continue;
        for (Elem b : domain)
            if (is_unimodular(r, a, b, ideals) && !sr1_solve(r, a, b, domain)) return false;
    }
    return true;
}

}  // namespace

bool sr1_holds(const InvolutiveRing& r) { return sr1_over(r, r.elements(), maximal_ideals(r)); }

bool sr1_holds_fixed(const InvolutiveRing& r) {
    // R is integral over R_theta, so unimodularity in R_theta and in R agree
    return sr1_over(r, r.members(Subset::fixed), maximal_ideals(r));
}

std::optional<APair> ssr1_scan(const InvolutiveRing& r, Elem a, Elem b, Elem c, const std::vector<APair>& pairs) {
    for (const auto& p : pairs)
        if (r.is_unit(r.add(a, r.add(r.mul(b, p.t), r.mul(c, p.u))))) return p;
    return std::nullopt;
}

std::optional<APair> ssr1_scan(const InvolutiveRing& r, Elem a, Elem b, Elem c) {
    return ssr1_scan(r, a, b, c, apair_list(r));
}

std::optional<Matrix> is_completable(const InvolutiveRing& r, Elem a, Elem b, Elem c, const Caps& caps) {
    if (a == r.one() && b == r.zero() && c == r.zero()) return mat::identity(r, 3);
    if (a == r.zero() && b == r.zero() && c == r.one()) return su3::w_elem(r, r.one());
    const auto all = r.elements();
    std::uint64_t budget = caps.search;
    auto spend = [&] {
        if (budget-- == 0) throw CapExceeded("completion search exceeded the search cap");
    };
    Matrix m(3);
    m(0, 0) = a;
    m(0, 1) = b;
    m(0, 2) = c;
    auto eq = [&](Elem lhs, Elem x1, Elem y1, Elem x2, Elem y2) {
        return r.theta(lhs) == r.sub(r.mul(x1, y1), r.mul(x2, y2));
    };
    for (Elem a21 : all)
        for (Elem a22 : all) {
            spend();
            if (!eq(a, a, a22, b, a21)) continue;  // U-B.1.1
            for (Elem a23 : all) {
                if (!eq(b, a, a23, c, a21) || !eq(c, b, a23, c, a22)) continue;  // U-B.1.2, U-B.1.3
                for (Elem a31 : all)
                    for (Elem a32 : all) {
                        spend();
                        if (!eq(a21, a, a32, b, a31)) continue;  // U-B.2.1
                        for (Elem a33 : all) {
                            if (!eq(a22, a, a33, c, a31) || !eq(a23, b, a33, c, a32)) continue;
                            m(1, 0) = a21;
                            m(1, 1) = a22;
                            m(1, 2) = a23;
                            m(2, 0) = a31;
                            m(2, 1) = a32;
                            m(2, 2) = a33;
                            if (su3::in_su3(r, m)) return m;
                        }
                    }
            }
        }
    return std::nullopt;
}

namespace {

std::array<Elem, 3> first_row(const Matrix& m) { return {m(0, 0), m(0, 1), m(0, 2)}; }

SSR1Witness make_witness(const InvolutiveRing& r, const Matrix& completion, const APair& z) {
    auto v = first_row(completion);
    Elem unit = r.add(v[0], r.add(r.mul(v[1], z.t), r.mul(v[2], z.u)));
    return {v, completion, z, unit};
}

std::string show_row(const InvolutiveRing& r, const std::array<Elem, 3>& v) {
    return "(" + r.format(v[0]) + ", " + r.format(v[1]) + ", " + r.format(v[2]) + ")";
}

std::optional<APair> semilocal_pair(const InvolutiveRing& r, const std::array<Elem, 3>& v,
                                    const MaximalIdealList& ideals, const APair& base) {
    Elem a = v[0], c = v[2];
    Elem ac = r.mul(a, c);
    std::vector<char> mask(r.size(), 1);
    for (const auto& m : ideals.ideals) {
        if (!m.contains(ac))
            for (std::uint32_t i = 0; i < r.size(); ++i)
                if (!m.mask[i]) mask[i] = 0;
        if (m.contains(a))
            for (std::uint32_t i = 0; i < r.size(); ++i)
                if (m.mask[i]) mask[i] = 0;
    }
    for (std::uint32_t i = 0; i < r.size(); ++i)
        if (mask[i]) return apair_scale(r, Elem{i}, base);
    return std::nullopt;
}

}  // namespace

SSR1Witness ssr1_solve(const InvolutiveRing& r, const Matrix& completion) {
    auto v = first_row(completion);
    auto z = ssr1_scan(r, v[0], v[1], v[2]);
    if (!z) throw HypothesisError("SSR1 fails over " + r.spec() + " for first row " + show_row(r, v));
    return make_witness(r, completion, *z);
}

bool semilocal_applicable(const InvolutiveRing& r, const MaximalIdealList& ideals, std::string* why) {
    for (const auto& m : ideals.ideals)
        for (Elem x : m.members)
            if (!m.contains(r.theta(x))) {
                if (why) *why = "a maximal ideal of " + r.spec() + " is not stable under the involution";
                return false;
            }
    if (apair_list(r, true).empty()) {
        if (why) *why = "no admissible pair with unit second coordinate over " + r.spec();
        return false;
    }
    return true;
}

SSR1Witness ssr1_solve_semilocal(const InvolutiveRing& r, const Matrix& completion, const MaximalIdealList& ideals) {
    std::string why;
    if (!semilocal_applicable(r, ideals, &why)) throw HypothesisError(why);
    auto base = apair_list(r, true).front();
    auto v = first_row(completion);
    auto z = semilocal_pair(r, v, ideals, base);
    if (!z) throw HypothesisError("empty J-set for first row " + show_row(r, v) + " over " + r.spec());
    auto w = make_witness(r, completion, *z);
    if (!r.is_unit(w.unit))
        throw InternalError("J-route produced the non-unit " + r.format(w.unit) + " for " + show_row(r, v));
    return w;
}

namespace {

struct RowHash {
    std::size_t operator()(const std::array<Elem, 3>& v) const {
        return (static_cast<std::size_t>(v[0].id) * 1000003u + v[1].id) * 1000003u + v[2].id;
    }
};

}  // namespace

std::vector<std::pair<std::array<Elem, 3>, Matrix>> su3_first_rows_with_witness(const InvolutiveRing& r,
                                                                                const Caps& caps) {
    auto gens = su3::small_generators(r);
    std::unordered_map<std::array<Elem, 3>, std::size_t, RowHash> index;
    std::vector<std::pair<std::array<Elem, 3>, Matrix>> out;
    Matrix id = mat::identity(r, 3);
    out.emplace_back(first_row(id), id);
    index.emplace(first_row(id), 0);
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const auto& g : gens) {
            auto v = out[head].first;
            std::array<Elem, 3> w{};
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) w[j] = r.add(w[j], r.mul(v[k], g(k, j)));
            if (index.count(w)) continue;
            if (out.size() >= caps.closure) throw CapExceeded("first-row orbit exceeds the closure cap");
            index.emplace(w, out.size());
            out.emplace_back(w, mat::mul(r, out[head].second, g));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::array<Elem, 3>> su3_first_rows(const InvolutiveRing& r, const Caps& caps) {
    std::vector<std::array<Elem, 3>> rows;
    for (auto& [v, m] : su3_first_rows_with_witness(r, caps)) rows.push_back(v);
    return rows;
}

bool ssr1_holds(const InvolutiveRing& r, const Caps& caps) {
    auto pairs = apair_list(r);
    for (const auto& v : su3_first_rows(r, caps))
        if (!ssr1_scan(r, v[0], v[1], v[2], pairs)) return false;
    return true;
}

RowSolver brute_row_solver(const InvolutiveRing& r) {
    auto pairs = std::make_shared<std::vector<APair>>(apair_list(r));
    return [r, pairs](const Matrix& a) { return ssr1_scan(r, a(0, 0), a(0, 1), a(0, 2), *pairs); };
}

RowSolver semilocal_row_solver(const InvolutiveRing& r, MaximalIdealList ideals) {
    std::string why;
    if (!semilocal_applicable(r, ideals, &why)) throw HypothesisError(why);
    auto shared = std::make_shared<MaximalIdealList>(std::move(ideals));
    APair base = apair_list(r, true).front();
    return [r, shared, base](const Matrix& a) -> std::optional<APair> {
        auto z = semilocal_pair(r, first_row(a), *shared, base);
        if (z && !r.is_unit(r.add(a(0, 0), r.add(r.mul(a(0, 1), z->t), r.mul(a(0, 2), z->u))))) return std::nullopt;
        return z;
    };
}

std::vector<std::pair<Elem, APair>> b1_set(const InvolutiveRing& r) {
    std::vector<std::optional<APair>> best(r.size());
    for (const auto& e : apair_enumerate(r))
        if (e.star && !best[e.pair.u.id]) best[e.pair.u.id] = e.pair;
    std::vector<std::pair<Elem, APair>> out;
    for (std::uint32_t i = 0; i < r.size(); ++i)
        if (best[i]) out.emplace_back(Elem{i}, *best[i]);
    return out;
}

ClengthCertificate c_length(const InvolutiveRing& r, int max_k) {
    ClengthCertificate cert;
    const auto n = r.size();
    cert.witness.assign(n, std::nullopt);
    cert.level.assign(n, 0);
    cert.parent_prev.assign(n, Elem{});
    cert.parent_step.assign(n, Elem{});
    for (auto& [u, p] : b1_set(r)) {
        cert.b1.push_back(u);
        cert.witness[u.id] = p;
    }

    auto ideals = maximal_ideals(r);
    bool two_unit = r.is_unit(r.from_int(2));
    bool skew_unit = !r.members(Subset::skew_units).empty();
    if (ideals.ideals.size() == 1 && ideals.jacobson.size() == 1) cert.shape = RingShape::field;
    else if (ideals.ideals.size() == 1 && two_unit && skew_unit) cert.shape = RingShape::local;
    else if (ideals.ideals.size() == 2 && two_unit && skew_unit) {
        const auto& m1 = ideals.ideals[0];
        const auto& m2 = ideals.ideals[1];
        bool swapped = std::all_of(m1.members.begin(), m1.members.end(), [&](Elem x) { return m2.contains(r.theta(x)); });
        if (swapped) cert.shape = RingShape::local;
    }

    if (cert.b1.empty()) return cert;

    // B_2 with split
    cert.b2_split.assign(n, {Elem{}, Elem{}});
    std::vector<Elem> b2;
    for (Elem a : cert.b1)
        for (Elem b : cert.b1) {
            Elem u = r.mul(a, b);
            if (cert.level[u.id] == 0) {
                cert.level[u.id] = 1;
                cert.b2_split[u.id] = {a, b};
                b2.push_back(u);
            }
        }
    std::sort(b2.begin(), b2.end());

    std::vector<Elem> current = b2;
    cert.even_sizes.push_back(current.size());
    int k = 1;
    for (int j = 2; j <= max_k + 1; ++j) {
        std::vector<Elem> fresh;
        for (Elem u : current)
            for (Elem s : b2) {
                Elem v = r.mul(u, s);
                if (cert.level[v.id] == 0) {
                    cert.level[v.id] = j;
                    cert.parent_prev[v.id] = u;
                    cert.parent_step[v.id] = s;
                    fresh.push_back(v);
                }
            }
        if (fresh.empty()) break;
        if (j > max_k) {
            k = -1;
            break;
        }
        current.insert(current.end(), fresh.begin(), fresh.end());
        std::sort(current.begin(), current.end());
        cert.even_sizes.push_back(current.size());
        k = j;
    }
    cert.c_even = current;
    if (k > 0) cert.k = k;
    cert.theta_complete = k > 0 && current.size() == r.members(Subset::units).size();

    // odd chain B_1, B_3, ...
    std::vector<char> seen(n, 0);
    std::vector<Elem> odd = cert.b1;
    for (Elem u : odd) seen[u.id] = 1;
    cert.odd_sizes.push_back(odd.size());
    for (int j = 0; j <= max_k; ++j) {
        std::vector<Elem> fresh;
        for (Elem u : odd)
            for (Elem s : b2) {
                Elem v = r.mul(u, s);
                if (!seen[v.id]) {
                    seen[v.id] = 1;
                    fresh.push_back(v);
                }
            }
        if (fresh.empty()) break;
        odd.insert(odd.end(), fresh.begin(), fresh.end());
        cert.odd_sizes.push_back(odd.size());
    }
    std::sort(odd.begin(), odd.end());
    cert.c_odd = odd;
    return cert;
}

namespace {

void expand(const InvolutiveRing& r, Elem u, const ClengthCertificate& cert, std::vector<UnitFactor>& out) {
    int lv = cert.level[u.id];
    if (lv == 1) {
        auto [a, b] = cert.b2_split[u.id];
        out.push_back({a, *cert.witness[a.id]});
        out.push_back({b, *cert.witness[b.id]});
        return;
    }
    expand(r, cert.parent_prev[u.id], cert, out);
    expand(r, cert.parent_step[u.id], cert, out);
}

// Field and local constructions; empty when they do not apply.
std::vector<UnitFactor> fast_path(const InvolutiveRing& r, Elem x, const ClengthCertificate& cert) {
    Num u{r, x};
    Num diff = u - u.bar();
    auto skew = r.members(Subset::skew_units);
    if (cert.shape == RingShape::field) {
        if (!(diff == Num{r, r.zero()})) {
            Num u2 = u / diff;
            return {{diff, {r.zero(), diff}}, {u2, {r.one(), u2}}};
        }
        if (skew.empty()) return {};
        Num a{r, skew.front()};
        Num u2 = u / a;
        return {{a, {r.zero(), a}}, {u2, {r.zero(), u2}}};
    }
    if (cert.shape == RingShape::local) {
        if (r.is_unit(diff)) {
            Num u2 = u / diff;
            return {{diff, {r.zero(), diff}}, {u2, {r.one(), u2}}};
        }
        Num sum = u + u.bar();
        if (!r.is_unit(sum) || skew.empty()) return {};
        Num a{r, skew.front()};
        Num two{r, r.from_int(2)};
        Num u2 = sum / (two * a);
        Num u3 = u / sum;
        return {{a, {r.zero(), a}}, {u2, {r.zero(), u2}}, {u3, {r.one(), u3}}, {two, {two, two}}};
    }
    return {};
}

}  // namespace

std::vector<UnitFactor> decompose_unit(const InvolutiveRing& r, Elem x, const ClengthCertificate& cert) {
    if (!r.is_unit(x)) throw InputError(r.format(x) + " is not a unit");
    if (!cert.theta_complete || !cert.k) throw HypothesisError(r.spec() + " is not theta-complete");
    const std::size_t target = 2 * static_cast<std::size_t>(*cert.k);
    std::vector<UnitFactor> out = fast_path(r, x, cert);
    if (out.empty() || out.size() > target) {
        out.clear();
        expand(r, x, cert, out);
    }
    if (out.size() < target) {
        std::pair<Elem, Elem> pad{r.one(), r.one()};
        if (!cert.witness[r.one().id]) pad = cert.b2_split[r.one().id];
        while (out.size() < target) {
            out.push_back({pad.first, *cert.witness[pad.first.id]});
            out.push_back({pad.second, *cert.witness[pad.second.id]});
        }
    }
    return out;
}

}  // namespace twistfact
