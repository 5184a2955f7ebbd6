#include "twistfact/su3.hpp"

#include <functional>
#include <random>

#include "twistfact/error.hpp"

namespace twistfact::su3 {

Matrix x_plus(const InvolutiveRing& r, const APair& p) {
    Matrix m = mat::identity(r, 3);
    m(0, 1) = p.t;
    m(0, 2) = p.u;
    m(1, 2) = r.theta(p.t);
    return m;
}

Matrix x_minus(const InvolutiveRing& r, const APair& p) {
    Matrix m = mat::identity(r, 3);
    m(1, 0) = r.theta(p.t);
    m(2, 0) = p.u;
    m(2, 1) = p.t;
    return m;
}

Matrix x_signed(const InvolutiveRing& r, Sign s, const APair& p) {
    return s == Sign::plus ? x_plus(r, p) : x_minus(r, p);
}

Matrix h_elem(const InvolutiveRing& r, Elem x) {
    Num a{r, x};
    Matrix m(3);
    m(0, 0) = a;
    m(1, 1) = a.bar() / a;
    m(2, 2) = a.bar().inv();
    return m;
}

Matrix w_elem(const InvolutiveRing& r, Elem x) {
    Num a{r, x};
    Matrix m(3);
    m(0, 2) = a;
    m(1, 1) = -(a.inv() * a.bar());
    m(2, 0) = a.bar().inv();
    return m;
}

Matrix w_pm(const InvolutiveRing& r, Sign s, const APair& p) {
    Num t{r, p.t}, u{r, p.u};
    APair mid{-(t / u), u.bar().inv()};
    APair last{t / u * u.bar(), u};
    return mat::mul(r, mat::mul(r, x_signed(r, s, p), x_signed(r, flip(s), mid)), x_signed(r, s, last));
}

Matrix h_pm(const InvolutiveRing& r, Sign s, const APair& p, const APair& q) {
    return mat::mul(r, w_pm(r, s, p), w_pm(r, s, q));
}

Su3Check su3_check(const InvolutiveRing& r, const Matrix& m) {
    Su3Check out;
    if (m.n() != 3) {
        out.first = Violation{"size", std::to_string(m.n()), "3"};
        return out;
    }
    auto a = [&](int i, int j) { return Num{r, m(i - 1, j - 1)}; };
    auto fmt = [&](Num x) { return r.format(x); };

    Num det{r, mat::det(r, m)};
    bool det_ok = det == Num{r, r.one()};

    struct Eq {
        const char* tag;
        int i, j;
        long long target;
    };
    static constexpr Eq kA[] = {{"U-A.1.1", 1, 1, 0}, {"U-A.1.2", 1, 2, 0}, {"U-A.1.3", 1, 3, 1},
                                {"U-A.2.2", 2, 2, -1}, {"U-A.2.3", 2, 3, 0}, {"U-A.3.3", 3, 3, 0}};
    std::optional<Violation> first_a;
    for (const auto& e : kA) {
        Num lhs = a(3, e.i) * a(1, e.j).bar() - a(2, e.i) * a(2, e.j).bar() + a(1, e.i) * a(3, e.j).bar();
        Num rhs{r, r.from_int(e.target)};
        if (!(lhs == rhs) && !first_a) first_a = Violation{e.tag, fmt(lhs), fmt(rhs)};
    }

    // bar(a_ij) equals the listed 2x2 minor
    struct Minor {
        const char* tag;
        int i, j, p1, q1, p2, q2, p3, q3, p4, q4;
    };
    static constexpr Minor kB[] = {
        {"U-B.1.1", 1, 1, 1, 1, 2, 2, 1, 2, 2, 1}, {"U-B.1.2", 1, 2, 1, 1, 2, 3, 1, 3, 2, 1},
        {"U-B.1.3", 1, 3, 1, 2, 2, 3, 1, 3, 2, 2}, {"U-B.2.1", 2, 1, 1, 1, 3, 2, 1, 2, 3, 1},
        {"U-B.2.2", 2, 2, 1, 1, 3, 3, 1, 3, 3, 1}, {"U-B.2.3", 2, 3, 1, 2, 3, 3, 1, 3, 3, 2},
        {"U-B.3.1", 3, 1, 2, 1, 3, 2, 2, 2, 3, 1}, {"U-B.3.2", 3, 2, 2, 1, 3, 3, 2, 3, 3, 1},
        {"U-B.3.3", 3, 3, 2, 2, 3, 3, 2, 3, 3, 2}};
    std::optional<Violation> first_b;
    for (const auto& e : kB) {
        Num lhs = a(e.i, e.j).bar();
        Num rhs = a(e.p1, e.q1) * a(e.p2, e.q2) - a(e.p3, e.q3) * a(e.p4, e.q4);
        if (!(lhs == rhs) && !first_b) first_b = Violation{e.tag, fmt(lhs), fmt(rhs)};
    }

    out.ok = det_ok && !first_a;
    if (!det_ok) out.first = Violation{"det", fmt(det), "1"};
    else if (first_a) out.first = first_a;
    if (det_ok && first_a.has_value() != first_b.has_value()) {
        out.inconsistency = first_a ? Violation{"U-B holds but " + std::string(first_a->tag) + " fails", first_a->lhs,
                                                first_a->rhs}
                                    : Violation{"U-A holds but " + first_b->tag + " fails", first_b->lhs, first_b->rhs};
    }
    return out;
}

std::string FactoredForm::shape() const {
    std::string s = head ? "H" : "";
    for (const auto& f : factors) s += sign_char(f.sign);
    return s;
}

Matrix evaluate(const InvolutiveRing& r, const std::optional<Elem>& head, const std::vector<Factor>& factors) {
    Matrix m = head ? h_elem(r, *head) : mat::identity(r, 3);
    for (const auto& f : factors) m = mat::mul(r, m, x_signed(r, f.sign, f.pair));
    return m;
}

std::vector<Factor> merge_adjacent(const InvolutiveRing& r, std::vector<Factor> f) {
    std::vector<Factor> out;
    for (const auto& x : f) {
        if (!out.empty() && out.back().sign == x.sign)
            out.back().pair = apair_compose(r, x.pair, out.back().pair);
        else
            out.push_back(x);
    }
    return out;
}

std::vector<Factor> drop_identities(const InvolutiveRing& r, const std::vector<Factor>& f) {
    std::vector<Factor> cur = f;
    for (;;) {
        std::vector<Factor> kept;
        for (const auto& x : cur)
            if (!apair_is_zero(x.pair)) kept.push_back(x);
        kept = merge_adjacent(r, kept);
        if (kept.size() == cur.size()) return kept;
        cur = std::move(kept);
    }
}

APair conj_by_h(const InvolutiveRing& r, Sign s, Elem x, const APair& p) {
    Num a{r, x}, t{r, p.t}, u{r, p.u};
    if (s == Sign::plus) return {a * a * a.bar().inv() * t, a * a.bar() * u};
    return {a * a.bar().inv() * a.bar().inv() * t, a.inv() * a.bar().inv() * u};
}

RelationReport relation_suite(const InvolutiveRing& r, std::uint64_t samples, std::uint64_t seed) {
    const std::vector<std::string> tags = {"H1", "H2", "W1", "W2", "HW1", "HW2", "HW3", "W3", "H3"};
    std::vector<std::uint64_t> pass(tags.size(), 0);
    RelationReport rep;

    auto inv = [&](const Matrix& m) { return mat::sigma_inverse(r, m); };
    auto mul = [&](const Matrix& a, const Matrix& b) { return mat::mul(r, a, b); };
    auto conj = [&](const Matrix& g, const Matrix& x) { return mul(mul(g, x), inv(g)); };
    auto record = [&](std::size_t idx, bool ok, const std::string& what) {
        if (ok) {
            ++pass[idx];
        } else {
            ++rep.violations;
            if (!rep.first_counterexample) rep.first_counterexample = tags[idx] + ": " + what;
        }
    };
    auto show = [&](Elem e) { return r.format(e); };
    auto showp = [&](const APair& p) { return "(" + show(p.t) + "," + show(p.u) + ")"; };

    auto check_rp = [&](Elem x, const APair& p) {
        Num a{r, x}, t{r, p.t}, u{r, p.u};
        Num ab = a.bar();
        std::string ctx = "r=" + show(x) + " p=" + showp(p);
        record(0, conj(h_elem(r, x), x_plus(r, p)) == x_plus(r, {a * a / ab * t, a * ab * u}), ctx);
        record(1, conj(h_elem(r, x), x_minus(r, p)) == x_minus(r, {a / (ab * ab) * t, (a * ab).inv() * u}), ctx);
        record(2, conj(w_elem(r, x), x_plus(r, p)) == x_minus(r, {-(a / (ab * ab) * t), (a * ab).inv() * u}), ctx);
        record(3, conj(w_elem(r, x), x_minus(r, p)) == x_plus(r, {-(a * a / ab * t), a * ab * u}), ctx);
    };
    auto check_rs = [&](Elem x, Elem y) {
        Num a{r, x}, b{r, y};
        std::string ctx = "r=" + show(x) + " s=" + show(y);
        record(4, h_elem(r, x) == mul(w_elem(r, x), inv(w_elem(r, r.one()))), ctx);
        record(5, conj(h_elem(r, x), w_elem(r, y)) == w_elem(r, a * a.bar() * b), ctx);
        record(6, conj(w_elem(r, x), h_elem(r, y)) == h_elem(r, b.bar().inv()), ctx);
    };
    auto check_w3 = [&](const APair& p) {
        Num u{r, p.u};
        std::string ctx = "p=" + showp(p);
        record(7, w_pm(r, Sign::plus, p) == w_elem(r, u) && w_pm(r, Sign::minus, p) == w_elem(r, u.bar().inv()), ctx);
    };
    auto check_h3 = [&](const APair& p, const APair& q) {
        Num u1{r, p.u}, u2{r, q.u};
        std::string ctx = "p=" + showp(p) + " q=" + showp(q);
        record(8,
               h_pm(r, Sign::plus, p, q) == h_elem(r, u1 / u2.bar()) &&
                   h_pm(r, Sign::minus, p, q) == h_elem(r, u1.bar().inv() * u2),
               ctx);
    };

    auto units = r.members(Subset::units);
    auto pairs = apair_list(r);
    auto stars = apair_list(r, true);

    if (samples == 0) {
        for (Elem x : units)
            for (const auto& p : pairs) check_rp(x, p);
        for (Elem x : units)
            for (Elem y : units) check_rs(x, y);
        for (const auto& p : stars) check_w3(p);
        for (const auto& p : stars)
            for (const auto& q : stars) check_h3(p, q);
    } else {
        std::mt19937_64 rng(seed);
        auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
        for (std::uint64_t i = 0; i < samples; ++i) {
            Elem x = units[pick(units.size())];
            Elem y = units[pick(units.size())];
            APair p = pairs[pick(pairs.size())];
            check_rp(x, p);
            check_rs(x, y);
            if (!stars.empty()) {
                APair p1 = stars[pick(stars.size())];
                APair p2 = stars[pick(stars.size())];
                check_w3(p1);
                check_h3(p1, p2);
            }
        }
    }
    for (std::size_t i = 0; i < tags.size(); ++i) rep.passes.emplace_back(tags[i], pass[i]);
    return rep;
}

}  // namespace twistfact::su3
