#include <algorithm>

#include "twistfact/error.hpp"
#include "twistfact/su3.hpp"

namespace twistfact::su3 {

Orientation parse_orientation(const std::string& name) {
    if (name == "row" || name == "-+-") return Orientation::row;
    if (name == "lastrow" || name == "+-+") return Orientation::last_row;
    if (name == "lastcol") return Orientation::last_col;
    if (name == "firstcol") return Orientation::first_col;
    throw InputError("unknown orientation '" + name + "' (row, lastrow, lastcol, firstcol)");
}

std::string orientation_name(Orientation o) {
    switch (o) {
        case Orientation::row: return "row";
        case Orientation::last_row: return "lastrow";
        case Orientation::last_col: return "lastcol";
        case Orientation::first_col: return "firstcol";
    }
    return "row";
}

namespace {

// h(c) x-(l) x+(q) x-(m) from the first row of a, following the row-operation proof.
FactoredForm gauss_row(const InvolutiveRing& r, const Matrix& a, const RowSolver& solver) {
    auto z = solver(a);
    if (!z)
        throw HypothesisError("SSR1 solver found no pair for first row (" + r.format(a(0, 0)) + ", " +
                              r.format(a(0, 1)) + ", " + r.format(a(0, 2)) + ") over " + r.spec());
    APair right{r.theta(z->t), z->u};
    Matrix b = mat::mul(r, a, x_minus(r, right));
    Num b11{r, b(0, 0)}, b21{r, b(1, 0)}, b31{r, b(2, 0)};
    if (!r.is_unit(b11)) throw InternalError("pivot is not a unit after the SSR1 step");
    APair left{-(b21.bar() / b11.bar()), -(b31 / b11) + b21 * b21.bar() / (b11 * b11.bar())};
    if (!is_admissible(r, left.t, left.u)) throw InternalError("column-clearing pair is not admissible");
    Matrix c = mat::mul(r, x_minus(r, left), b);
    Num c11{r, c(0, 0)};
    APair q{Num{r, c(0, 1)} / c11, Num{r, c(0, 2)} / c11};
    if (!is_admissible(r, q.t, q.u) || c != mat::mul(r, h_elem(r, c11), x_plus(r, q)))
        throw InternalError("residual is not h * x+ after clearing the first column");

    // a = x-(left)^-1 h(c) x+(q) x-(right)^-1, then move h to the front
    Elem cinv = r.inv(c11);
    FactoredForm f;
    f.head = c11.elem();
    f.factors = {{Sign::minus, conj_by_h(r, Sign::minus, cinv, apair_inverse(r, left))},
                 {Sign::plus, q},
                 {Sign::minus, apair_inverse(r, right)}};
    return f;
}

// w(1) F w(1), using w(1)^2 = 1, w x+-(t,u) w = x-+(-t,u) and w h(c) w = h(bar(c)^-1)
FactoredForm flip_by_w(const InvolutiveRing& r, const FactoredForm& f) {
    FactoredForm g;
    if (f.head) g.head = r.inv(r.theta(*f.head));
    for (const auto& x : f.factors) g.factors.push_back({flip(x.sign), {r.neg(x.pair.t), x.pair.u}});
    return g;
}

// (h(c) f_1 ... f_m)^-1 = h(c^-1) prod (h(c) f_j^-1 h(c)^-1), j descending
FactoredForm invert_form(const InvolutiveRing& r, const FactoredForm& f) {
    FactoredForm g;
    Elem c = f.head ? *f.head : r.one();
    g.head = r.inv(c);
    for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it)
        g.factors.push_back({it->sign, conj_by_h(r, it->sign, c, apair_inverse(r, it->pair))});
    return g;
}

Matrix w_one(const InvolutiveRing& r) { return w_elem(r, r.one()); }

}  // namespace

FactoredForm gauss_decompose(const InvolutiveRing& r, const Matrix& a, Orientation o, const RowSolver& solver) {
    auto check = su3_check(r, a);
    if (!check.ok)
        throw InputError("matrix is not in SU(3," + r.spec() + "): " + check.first->tag + " gives " +
                         check.first->lhs + " instead of " + check.first->rhs);
    FactoredForm f;
    Matrix w = w_one(r);
    switch (o) {
        case Orientation::row: f = gauss_row(r, a, solver); break;
        case Orientation::last_row: f = flip_by_w(r, gauss_row(r, mat::mul(r, mat::mul(r, w, a), w), solver)); break;
        case Orientation::last_col: f = invert_form(r, gauss_row(r, mat::sigma_inverse(r, a), solver)); break;
        case Orientation::first_col: {
            Matrix ainv = mat::sigma_inverse(r, a);
            f = invert_form(r, flip_by_w(r, gauss_row(r, mat::mul(r, mat::mul(r, w, ainv), w), solver)));
            break;
        }
    }
    f.product = evaluate(r, f);
    if (f.product != a) throw InternalError("Gauss factorization does not reproduce its input");
    return f;
}

TorusResult torus_unitri(const InvolutiveRing& r, Elem x, const std::vector<UnitFactor>& decomposition,
                         Sign leading) {
    if (decomposition.empty() || decomposition.size() % 2 != 0)
        throw InputError("unit decomposition must have a positive even number of factors");
    Num prod{r, r.one()};
    for (const auto& f : decomposition) {
        if (f.witness.u != f.value || !is_admissible(r, f.witness.t, f.witness.u) || !r.is_unit(f.value))
            throw InputError("decomposition factor " + r.format(f.value) + " lacks a valid witness");
        prod = prod * Num{r, f.value};
    }
    if (prod.elem() != x) throw InputError("decomposition does not multiply to " + r.format(x));

    if (leading == Sign::plus) {
        // h(x) = w(1) h(bar(x)^-1) w(1); factors bar(r_j)^-1 with witnesses (t bar(u)^-1, bar(u)^-1)
        std::vector<UnitFactor> mirrored;
        for (const auto& f : decomposition) {
            Num t{r, f.witness.t}, u{r, f.value};
            Num ub = u.bar().inv();
            mirrored.push_back({ub, {t * ub, ub}});
        }
        TorusResult inner = torus_unitri(r, r.inv(r.theta(x)), mirrored, Sign::minus);
        TorusResult out = inner;
        out.form = flip_by_w(r, inner.form);
        out.form.product = evaluate(r, out.form);
        if (out.form.product != h_elem(r, x)) throw InternalError("mirrored torus factorization is wrong");
        return out;
    }

    const int k = static_cast<int>(decomposition.size() / 2);
    auto rr = [&](int j) { return Num{r, decomposition[j - 1].value}; };
    auto wit = [&](int j) { return decomposition[j - 1].witness; };
    auto s_of = [&](int i) {
        Num s{r, r.one()};
        if (i > k) return s;
        for (int j = 1; j <= 2 * (k - i) + 2; ++j) s = s * rr(j);
        return s;
    };
    auto row_is = [&](const Matrix& m, Num a, Num b, Num c) {
        return m(0, 0) == a.elem() && m(0, 1) == b.elem() && m(0, 2) == c.elem();
    };

    TorusResult res;
    Matrix cmat = h_elem(r, x);
    std::vector<APair> zs(k + 1), xs(k + 1), ys(k + 1);
    for (int i = 1; i <= k; ++i) {
        int jz = 2 * (k - i) + 2, jy = 2 * (k - i) + 1;
        Num zt{r, wit(jz).t}, zu = rr(jz);
        APair z{-(zt / zu), zu.inv()};
        APair y = wit(jy);
        Num z1{r, z.t}, z2{r, z.u}, y1{r, y.t}, y2{r, y.u};
        Num x1 = y1 / y2 - z1 / z2;
        Num x2 = (y2.inv() - z2.inv()) - z1 / z2 * (y1.bar() / y2.bar() - z1.bar() / z2.bar());
        APair xp{x1, x2};
        if (!is_admissible(r, z.t, z.u) || !is_admissible(r, xp.t, xp.u))
            throw InternalError("torus step " + std::to_string(i) + " built a non-admissible pair");
        zs[i] = z;
        xs[i] = xp;
        ys[i] = y;

        Num si = s_of(i), snext = s_of(i + 1);
        Matrix amat = mat::mul(r, cmat, x_plus(r, z));
        Matrix bmat = mat::mul(r, amat, x_minus(r, xp));
        cmat = mat::mul(r, bmat, x_plus(r, apair_inverse(r, y)));
        if (!row_is(amat, si, si * z1, si * z2) || !row_is(bmat, snext, snext * y1, snext * y2) ||
            !row_is(cmat, snext, Num{r, r.zero()}, Num{r, r.zero()}))
            throw InternalError("torus step " + std::to_string(i) + " first rows disagree with the construction");
        ++res.steps;
    }
    APair ck{cmat(2, 1), cmat(2, 0)};
    res.c_k_lower = is_admissible(r, ck.t, ck.u) && cmat == x_minus(r, ck);
    if (!res.c_k_lower) throw InternalError("C^(k) is not lower unitriangular");

    // h(x) = C^(k) prod_{i=k..1} x+(y_i) x-(x_i)^-1 x+(z_i)^-1
    std::vector<Factor> f{{Sign::minus, ck}};
    for (int i = k; i >= 1; --i) {
        f.push_back({Sign::plus, ys[i]});
        f.push_back({Sign::minus, apair_inverse(r, xs[i])});
        f.push_back({Sign::plus, apair_inverse(r, zs[i])});
    }
    res.form.factors = merge_adjacent(r, f);
    res.form.product = evaluate(r, res.form);
    if (res.form.factors.size() != static_cast<std::size_t>(2 * (k + 1)) || res.form.product != h_elem(r, x))
        throw InternalError("torus factorization has the wrong length or product");
    return res;
}

UnitriResult unitri_decompose(const InvolutiveRing& r, const Matrix& a, const ClengthCertificate& cert,
                              const RowSolver& solver) {
    FactoredForm g = gauss_decompose(r, a, Orientation::last_row, solver);
    Elem c = *g.head;
    // h(c) f1 f2 f3 = (h f1 h^-1)(h f2 h^-1)(h f3 h^-1) h(c)
    std::vector<Factor> f;
    for (const auto& x : g.factors) f.push_back({x.sign, conj_by_h(r, x.sign, c, x.pair)});
    auto torus = torus_unitri(r, c, decompose_unit(r, c, cert), Sign::plus);
    f.insert(f.end(), torus.form.factors.begin(), torus.form.factors.end());

    UnitriResult res;
    res.form.factors = drop_identities(r, f);
    res.form.product = evaluate(r, res.form);
    res.length = res.form.factors.size();
    if (res.form.product != a) throw InternalError("unitriangular factorization does not reproduce its input");
    return res;
}

}  // namespace twistfact::su3
