#include <algorithm>
#include <set>

#include <doctest.h>

#include "test_util.hpp"
#include "twistfact/conditions.hpp"
#include "twistfact/error.hpp"
#include "twistfact/kernels.hpp"
#include "twistfact/su3.hpp"

using namespace twistfact;

namespace {

std::set<std::uint32_t> ids(const std::vector<Elem>& xs) {
    std::set<std::uint32_t> s;
    for (Elem e : xs) s.insert(e.id);
    return s;
}

std::set<std::uint32_t> product_set(const InvolutiveRing& r, const std::set<std::uint32_t>& a,
                                    const std::set<std::uint32_t>& b) {
    std::set<std::uint32_t> out;
    for (auto x : a)
        for (auto y : b) out.insert(r.mul(Elem{x}, Elem{y}).id);
    return out;
}

bool subset(const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_ideal(const InvolutiveRing& r, const ElementSet& m) {
    if (!m.contains(r.zero()) || m.contains(r.one())) return false;
    for (Elem a : m.members) {
        for (Elem b : m.members)
            if (!m.contains(r.add(a, b))) return false;
        for (Elem x : r.elements())
            if (!m.contains(r.mul(x, a))) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("conditions") {

TEST_CASE("sr1_solve frozen values") {
    auto r = tt::ring("gf(4)");
    CHECK(sr1_solve(r, r.zero(), r.one()) == r.one());
    CHECK(sr1_solve(r, r.one(), r.zero()) == r.zero());
    // (2, 1+i) in zi(4) is not unimodular: both lie in the maximal ideal (1+i).
    auto z = tt::ring("zi(4)");
    CHECK_FALSE(is_unimodular(z, tt::el(z, "2"), tt::el(z, "1+i"), maximal_ideals(z)));
    CHECK_FALSE(sr1_solve(z, tt::el(z, "2"), tt::el(z, "1+i")).has_value());
}

TEST_CASE("SR1 holds on the finite instances") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(4)", "zi(5)", "dual(gf(4))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        CHECK(sr1_holds(r));
        CHECK(sr1_holds_fixed(r));
    }
}

TEST_CASE("completion search") {
    auto r = tt::ring("gf(4)");
    auto e1 = is_completable(r, r.one(), r.zero(), r.zero());
    REQUIRE(e1.has_value());
    CHECK(*e1 == mat::identity(r, 3));
    auto e3 = is_completable(r, r.zero(), r.zero(), r.one());
    REQUIRE(e3.has_value());
    CHECK(*e3 == su3::w_elem(r, r.one()));
    // first rows need -a*bar(c) + b*bar(b) - c*bar(a) = 0, which fails for (0,1,0)
    CHECK_FALSE(is_completable(r, r.zero(), r.one(), r.zero()).has_value());
    for (const auto& [v, m] : su3_first_rows_with_witness(r)) {
        auto c = is_completable(r, v[0], v[1], v[2]);
        REQUIRE(c.has_value());
        CHECK(su3::in_su3(r, *c));
        CHECK((*c)(0, 0) == v[0]);
        CHECK((*c)(0, 1) == v[1]);
        CHECK((*c)(0, 2) == v[2]);
    }
}

TEST_CASE("ssr1_solve frozen values") {
    auto r = tt::ring("gf(4)");
    auto id = ssr1_solve(r, mat::identity(r, 3));
    CHECK(id.solution == APair{r.zero(), r.zero()});
    CHECK(id.unit == r.one());
    auto w = ssr1_solve(r, su3::w_elem(r, r.one()));
    CHECK(w.solution == APair{r.zero(), r.one()});
    CHECK(w.unit == r.one());

    auto g9 = tt::ring("gf(9)");
    auto w9 = ssr1_solve(g9, su3::w_elem(g9, g9.one()));
    CHECK(w9.solution == APair{g9.zero(), tt::el(g9, "g+2")});
    CHECK(w9.unit == tt::el(g9, "g+2"));
}

TEST_CASE("SSR1 holds on the finite instances") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(9)", "prodc(gf(4),gf(4))", "zi(5)", "dual(gf(9))"}) {
        CAPTURE(spec);
        CHECK(ssr1_holds(tt::ring(spec)));
    }
}

TEST_CASE("SSR1 passes to products of the factors") {
    auto a = tt::ring("gf(4)"), b = tt::ring("gf(9)"), p = tt::ring("prodc(gf(4),gf(9))");
    REQUIRE(ssr1_holds(a));
    REQUIRE(ssr1_holds(b));
    CHECK(ssr1_holds(p));
}

TEST_CASE("SSR1 matches both triangular product sets on tiny rings") {
    using su3::Sign;
    for (const char* spec : {"gf(4)", "gf(9)", "zi(3)", "zi(4)", "dual(gf(4))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto group = su3::su3_enumerate(r);
        std::vector<Matrix> torus;
        for (Elem u : r.members(Subset::units)) torus.push_back(su3::h_elem(r, u));
        auto up = kernels::unipotents(r, Sign::plus), lo = kernels::unipotents(r, Sign::minus);
        auto covers = [&](const std::vector<std::vector<Matrix>>& steps) {
            auto prod = kernels::layered_products(r, torus, steps, kernels::Exec::parallel, 1u << 26).last();
            std::sort(prod.begin(), prod.end());
            return prod == group;
        };
        bool holds = ssr1_holds(r);
        CHECK(holds == covers({lo, up, lo}));
        CHECK(holds == covers({up, lo, up}));
    }
}

TEST_CASE("brute and semilocal SSR1 solvers agree on every completable vector") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(9)", "dual(gf(9))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto ideals = maximal_ideals(r);
        REQUIRE(semilocal_applicable(r, ideals));
        std::size_t disagree = 0, bad = 0;
        for (const auto& [v, m] : su3_first_rows_with_witness(r)) {
            bool brute_ok = true, semi_ok = true;
            SSR1Witness wb, ws;
            try { wb = ssr1_solve(r, m); } catch (const HypothesisError&) { brute_ok = false; }
            try { ws = ssr1_solve_semilocal(r, m, ideals); } catch (const HypothesisError&) { semi_ok = false; }
            if (brute_ok != semi_ok) ++disagree;
            for (const SSR1Witness* w : {brute_ok ? &wb : nullptr, semi_ok ? &ws : nullptr}) {
                if (!w) continue;
                Elem val = r.add(v[0], r.add(r.mul(v[1], w->solution.t), r.mul(v[2], w->solution.u)));
                if (val != w->unit || !r.is_unit(val) || !is_admissible(r, w->solution.t, w->solution.u)) ++bad;
            }
        }
        CHECK(disagree == 0);
        CHECK(bad == 0);
    }
}

TEST_CASE("semilocal solver needs theta-stable maximal ideals") {
    // conjugation swaps (2+i) and (2-i)
    auto z = tt::ring("zi(5)");
    auto ideals = maximal_ideals(z);
    std::string why;
    CHECK_FALSE(semilocal_applicable(z, ideals, &why));
    CHECK(why.find("not stable") != std::string::npos);
    CHECK_THROWS_AS(ssr1_solve_semilocal(z, mat::identity(z, 3), ideals), HypothesisError);
    CHECK_THROWS_AS(semilocal_row_solver(z, ideals), HypothesisError);
}

TEST_CASE("maximal ideals and the Jacobson radical") {
    auto f = tt::ring("gf(4)");
    auto fi = maximal_ideals(f);
    REQUIRE(fi.ideals.size() == 1);
    CHECK(fi.ideals[0].members == std::vector<Elem>{f.zero()});

    auto z = tt::ring("zi(5)");
    CHECK(maximal_ideals(z).ideals.size() == 2);

    auto d = tt::ring("dual(gf(9))");
    auto di = maximal_ideals(d);
    REQUIRE(di.ideals.size() == 1);
    CHECK(di.ideals[0].size() == 9);
    CHECK(di.ideals[0].contains(tt::el(d, "e")));

    for (const char* spec : {"gf(9)", "zi(4)", "zi(5)", "zi(9)", "dual(gf(4))", "prodc(gf(4),gf(9))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto l = maximal_ideals(r);
        for (const auto& m : l.ideals) {
            CHECK(is_ideal(r, m));
            // maximal: adding anything outside generates the whole ring
            for (Elem x : r.elements()) {
                if (m.contains(x)) continue;
                bool reaches_one = false;
                for (Elem y : m.members)
                    for (Elem s : r.elements()) reaches_one = reaches_one || r.add(y, r.mul(s, x)) == r.one();
                CHECK(reaches_one);
            }
        }
        for (Elem x : r.elements()) {
            bool in_all = std::all_of(l.ideals.begin(), l.ideals.end(), [&](const ElementSet& m) { return m.contains(x); });
            bool quasi = true;
            for (Elem y : r.elements()) quasi = quasi && r.is_unit(r.add(r.one(), r.mul(x, y)));
            CHECK(l.jacobson.contains(x) == in_all);
            CHECK(l.jacobson.contains(x) == quasi);
        }
    }
}

TEST_CASE("J_r sets") {
    auto z = tt::ring("zi(5)");
    auto ideals = maximal_ideals(z);
    CHECK(j_r_set(z, tt::el(z, "2+i"), ideals).size() == 4);
    CHECK(j_r_set(z, z.one(), ideals).members == ideals.jacobson.members);
    CHECK(j_r_set(z, z.zero(), ideals).members == z.members(Subset::units));

    for (const char* spec : {"zi(5)", "zi(9)", "dual(gf(9))", "prodc(gf(4),gf(9))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto l = maximal_ideals(r);
        std::size_t empty = 0, bad = 0;
        for (Elem x : r.elements()) {
            auto j = j_r_set(r, x, l);
            if (j.empty()) ++empty;
            for (Elem s : j.members)
                if (!r.is_unit(r.add(x, s))) ++bad;
        }
        CHECK(empty == 0);
        CHECK(bad == 0);
    }
}

TEST_CASE("B1 of gf(4) with witnesses") {
    auto r = tt::ring("gf(4)");
    auto b1 = b1_set(r);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0].first == r.one());
    CHECK(b1[0].second == APair{r.zero(), r.one()});
    CHECK(b1[1].first == tt::el(r, "g"));
    CHECK(b1[1].second == APair{r.one(), tt::el(r, "g")});
    CHECK(b1[2].first == tt::el(r, "g+1"));
    CHECK(b1[2].second == APair{r.one(), tt::el(r, "g+1")});
}

TEST_CASE("2 lies in B1 when 2 is a unit") {
    for (const char* spec : {"gf(9)", "gf(25)", "zi(5)", "zi(9)", "dual(gf(9))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto b1 = b1_set(r);
        Elem two = r.from_int(2);
        CHECK(std::any_of(b1.begin(), b1.end(), [&](const auto& e) { return e.first == two; }));
    }
}

TEST_CASE("C-length table") {
    for (const char* spec : {"gf(4)", "gf(9)", "gf(16)", "gf(25)", "gf(49)"}) {
        CAPTURE(spec);
        auto c = c_length(tt::ring(spec));
        CHECK(c.theta_complete);
        CHECK(c.k == 1);
        CHECK(c.shape == RingShape::field);
    }
    for (const char* spec : {"dual(gf(9))", "zi(5)"}) {
        CAPTURE(spec);
        auto c = c_length(tt::ring(spec));
        REQUIRE(c.k.has_value());
        CHECK(*c.k <= 2);
        CHECK(*c.k == 1);
    }
    auto a = c_length(tt::ring("gf(4)")), b = c_length(tt::ring("gf(9)"));
    auto p = c_length(tt::ring("prodc(gf(4),gf(9))"));
    REQUIRE(p.k.has_value());
    CHECK(*p.k == std::max(*a.k, *b.k));
    CHECK(*p.k == 1);
}

TEST_CASE("B chain is monotone, stable under the natural maps, and C_even is a group") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(5)", "zi(9)", "dual(gf(9))", "dual(gf(4))", "zi(4)"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto cert = c_length(r);
        std::set<std::uint32_t> b1;
        for (const auto& [u, w] : b1_set(r)) b1.insert(u.id);
        CHECK(b1 == ids(cert.b1));

        std::vector<std::set<std::uint32_t>> b{{}, b1};
        for (int k = 2; k <= 6; ++k) b.push_back(product_set(r, b[k - 1], b1));
        for (int k = 1; k + 2 <= 6; ++k) CHECK(subset(b[k], b[k + 2]));
        for (std::size_t j = 0; j < cert.even_sizes.size() && 2 * (j + 1) <= 6; ++j)
            CHECK(cert.even_sizes[j] == b[2 * (j + 1)].size());

        auto units = r.members(Subset::units);
        for (int k : {1, 2}) {
            for (auto id : b[k]) {
                Elem u{id};
                CHECK(b[k].count(r.theta(u).id));
                CHECK(b[k].count(r.inv(u).id));
                for (Elem a : units) CHECK(b[k].count(r.mul(r.mul(a, r.theta(a)), u).id));
            }
        }

        auto ce = ids(cert.c_even);
        CHECK(ce.count(r.one().id));
        for (auto x : ce) {
            CHECK(ce.count(r.inv(Elem{x}).id));
            for (auto y : ce) CHECK(ce.count(r.mul(Elem{x}, Elem{y}).id));
        }
        if (cert.k) {
            CHECK(ce == b[2 * *cert.k]);
            CHECK(cert.theta_complete == (ce.size() == units.size()));
        }
    }
}

TEST_CASE("decompose_unit frozen values") {
    auto r = tt::ring("gf(4)");
    auto cert = c_length(r);
    auto d = decompose_unit(r, tt::el(r, "g"), cert);
    REQUIRE(d.size() == 2);
    CHECK(d[0].value == r.one());
    CHECK(d[0].witness == APair{r.zero(), r.one()});
    CHECK(d[1].value == tt::el(r, "g"));
    CHECK(d[1].witness == APair{r.one(), tt::el(r, "g")});

    // over gf(9) a non-fixed r splits as (r - bar r) * r (r - bar r)^-1
    auto f = tt::ring("gf(9)");
    auto cf = c_length(f);
    for (Elem x : f.members(Subset::units)) {
        if (f.theta(x) == x) continue;
        CAPTURE(f.format(x));
        Elem diff = f.sub(x, f.theta(x));
        auto dx = decompose_unit(f, x, cf);
        REQUIRE(dx.size() == 2);
        CHECK(dx[0].value == diff);
        CHECK(dx[1].value == f.mul(x, f.inv(diff)));
    }
}

TEST_CASE("decompose_unit returns 2k admissible factors multiplying to the input") {
    for (const char* spec : {"gf(4)", "gf(9)", "gf(25)", "zi(5)", "zi(9)", "dual(gf(9))", "prodc(gf(4),gf(9))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto cert = c_length(r);
        REQUIRE(cert.k.has_value());
        for (Elem x : cert.c_even) {
            auto d = decompose_unit(r, x, cert);
            CHECK(d.size() == static_cast<std::size_t>(2 * *cert.k));
            Elem prod = r.one();
            for (const auto& f : d) {
                CHECK(f.witness.u == f.value);
                CHECK(is_admissible(r, f.witness.t, f.witness.u));
                CHECK(r.is_unit(f.value));
                prod = r.mul(prod, f.value);
            }
            CHECK(prod == x);
        }
    }
}

}  // TEST_SUITE
