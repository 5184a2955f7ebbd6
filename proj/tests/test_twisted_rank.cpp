#include <algorithm>
#include <random>
#include <set>

#include <doctest.h>

#include "test_util.hpp"
#include "twistfact/error.hpp"
#include "twistfact/twisted_rank.hpp"

using namespace twistfact;
using namespace twistfact::rank;
using su3::Sign;

namespace {

std::vector<std::string> class_names(const RootSystem& rs) {
    std::vector<std::string> out;
    for (const auto& c : rs.classes) out.push_back(c.name);
    return out;
}

std::vector<int> positives(const RootSystem& rs) {
    std::vector<int> out;
    for (int c = 0; c < static_cast<int>(rs.classes.size()); ++c)
        if (rs.classes[c].sign > 0) out.push_back(c);
    return out;
}

Matrix sl2_eval(const InvolutiveRing& r, const Sl2Form& f) {
    Matrix m(2);
    m(0, 0) = f.head ? *f.head : r.one();
    m(1, 1) = f.head ? r.inv(*f.head) : r.one();
    m(0, 1) = m(1, 0) = r.zero();
    for (const auto& [s, x] : f.factors) {
        Matrix e = mat::identity(r, 2);
        if (s == Sign::plus) e(0, 1) = x;
        else e(1, 0) = x;
        m = mat::mul(r, m, e);
    }
    return m;
}

// Every det-1 2x2 matrix with entries in dom.
std::vector<std::array<Elem, 4>> sl2(const InvolutiveRing& r, const std::vector<Elem>& dom) {
    std::vector<std::array<Elem, 4>> out;
    for (Elem a : dom)
        for (Elem b : dom)
            for (Elem c : dom)
                for (Elem d : dom)
                    if (r.sub(r.mul(a, d), r.mul(b, c)) == r.one()) out.push_back({a, b, c, d});
    return out;
}

bool in_blocks(const LeviSplit& s, int i, int j) {
    for (const auto& b : s.blocks)
        if (std::count(b.begin(), b.end(), i) && std::count(b.begin(), b.end(), j)) return true;
    return false;
}

}  // namespace

TEST_SUITE("twisted_rank") {

TEST_CASE("class lists") {
    CHECK(class_names(build_root_system(3)) == std::vector<std::string>{"a1", "-a1"});
    CHECK(class_names(build_root_system(4)) ==
          std::vector<std::string>{"a1", "a2", "a1+a2", "2a1+a2", "-a1", "-a2", "-(a1+a2)", "-(2a1+a2)"});
    CHECK(class_names(build_root_system(5)) ==
          std::vector<std::string>{"a1", "a2", "a1+a2", "a1+2a2", "-a1", "-a2", "-(a1+a2)", "-(a1+2a2)"});

    auto rs4 = build_root_system(4);
    CHECK(rs4.rank == 2);
    CHECK(rs4.classes[0].type == ClassType::A1x2);
    CHECK(rs4.classes[1].type == ClassType::A1);
    CHECK(rs4.classes[1].orbit == std::vector<Root>{{1, 2}});
    CHECK(rs4.classes[3].orbit == std::vector<Root>{{0, 3}});
    auto rs5 = build_root_system(5);
    CHECK(rs5.classes[1].type == ClassType::A2);
    CHECK(rs5.classes[1].orbit == std::vector<Root>{{1, 2}, {2, 3}, {1, 3}});
    CHECK(rs5.classes[2].type == ClassType::A2);
    CHECK(rs5.classes[3].type == ClassType::A1x2);
    CHECK(build_root_system(3).classes[0].type == ClassType::A2);

    CHECK(rs4.find("-(a1+a2)") == 6);
    CHECK(rs4.negative_of(6) == 2);
    CHECK_THROWS_AS(rs4.find("a3"), InputError);
    CHECK_THROWS_AS(build_root_system(6), InputError);
}

TEST_CASE("closed sets and Levi ideals") {
    for (int n : {4, 5}) {
        CAPTURE(n);
        auto rs = build_root_system(n);
        auto pos = positives(rs);
        CHECK(is_closed(rs, pos));
        for (int pivot = 1; pivot <= rs.rank; ++pivot) {
            auto s = levi_split(rs, pivot);
            CHECK(is_closed(rs, s.sigma));
            CHECK(is_ideal(rs, s.sigma, pos));
            CHECK(is_closed(rs, s.phi));
            for (int c : s.sigma) CHECK(std::count(s.phi.begin(), s.phi.end(), c) == 0);
        }
        std::vector<int> all(rs.classes.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        CHECK(is_closed(rs, all));
    }
    auto rs5 = build_root_system(5);
    CHECK_FALSE(is_closed(rs5, {0, 1}));
    CHECK_FALSE(is_ideal(rs5, {0}, positives(rs5)));
}

TEST_CASE("frozen class signs match a fresh solve over gf(9)") {
    auto r = tt::ring("gf(9)");
    for (int n : {3, 4, 5}) {
        CAPTURE(n);
        auto rs = build_root_system(n);
        CHECK(solve_class_signs(r, rs) == frozen_signs(n));
    }
    CHECK(frozen_signs(4)[2] == ClassSigns{-1, 1});
    CHECK(frozen_signs(5)[2] == ClassSigns{-1, -1});
}

TEST_CASE("rank one generators are the SU(3) generators") {
    auto r = tt::ring("gf(9)");
    auto rs = build_root_system(3);
    for (const auto& p : apair_list(r)) {
        CHECK(class_generator(r, rs, 0, p) == su3::x_plus(r, p));
        CHECK(class_generator(r, rs, 1, p) == su3::x_minus(r, p));
    }
}

TEST_CASE("class generators preserve the form and invert through inverse_letter") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(5)"}) {
        for (int n : {4, 5}) {
            CAPTURE(spec);
            CAPTURE(n);
            auto r = tt::ring(spec);
            auto rs = build_root_system(n);
            std::size_t bad = 0;
            for (int c = 0; c < static_cast<int>(rs.classes.size()); ++c) {
                for (const auto& p : param_domain(r, rs, c)) {
                    Matrix g = class_generator(r, rs, c, p);
                    if (!mat::preserves_form(r, g) || mat::det(r, g) != r.one()) ++bad;
                    bool up = rs.classes[c].sign > 0;
                    if (up ? !mat::is_upper_unitriangular(r, g) : !mat::is_lower_unitriangular(r, g)) ++bad;
                    auto inv = inverse_letter(r, rs, {c, p});
                    if (!mat::is_identity(r, mat::mul(r, g, class_generator(r, rs, inv.cls, inv.param)))) ++bad;
                }
            }
            CHECK(bad == 0);
        }
    }
}

TEST_CASE("parameter domains") {
    auto r = tt::ring("gf(4)");
    auto rs4 = build_root_system(4);
    CHECK(param_domain(r, rs4, 0).size() == 4);  // A1^2 over R
    CHECK(param_domain(r, rs4, 1).size() == 2);  // A1 over R_theta
    auto rs5 = build_root_system(5);
    CHECK(param_domain(r, rs5, 1).size() == 8);  // A2 over A(R)
    CHECK_THROWS_AS(check_param(r, rs4, 1, Param{tt::el(r, "g")}), InputError);
    CHECK_THROWS_AS(check_param(r, rs5, 1, Param{r.one()}), InputError);
    CHECK_THROWS_AS(check_param(r, rs5, 1, Param{APair{r.one(), r.one()}}), InputError);
    CHECK_NOTHROW(check_param(r, rs5, 1, Param{APair{r.one(), tt::el(r, "g")}}));
}

TEST_CASE("Levi split of unipotents re-multiplies") {
    auto r = tt::ring("gf(4)");
    std::mt19937_64 rng(11);
    for (int n : {4, 5}) {
        CAPTURE(n);
        auto rs = build_root_system(n);
        for (int trial = 0; trial < 50; ++trial) {
            for (int sign : {1, -1}) {
                Matrix u = mat::identity(r, n);
                for (int c = 0; c < static_cast<int>(rs.classes.size()); ++c) {
                    if (rs.classes[c].sign != sign) continue;
                    auto dom = param_domain(r, rs, c);
                    u = mat::mul(r, u, class_generator(r, rs, c, dom[rng() % dom.size()]));
                }
                for (int pivot = 1; pivot <= rs.rank; ++pivot) {
                    auto s = levi_split(rs, pivot);
                    auto parts = levi_split_unipotent(r, u, s);
                    CHECK(mat::mul(r, parts.phi, parts.sigma) == u);
                    CHECK(mat::preserves_form(r, parts.phi));
                    CHECK(mat::preserves_form(r, parts.sigma));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            if (i != j && !in_blocks(s, i, j)) CHECK(parts.phi(i, j) == r.zero());
                            if (i != j && in_blocks(s, i, j)) CHECK(parts.sigma(i, j) == r.zero());
                        }
                }
            }
        }
    }
}

TEST_CASE("SL2 base factorization is exhaustive over SL2(F4) and SL2(F2)") {
    auto r = tt::ring("gf(4)");
    auto fixed = r.members(Subset::fixed);
    auto big = sl2(r, r.elements());
    auto small = sl2(r, fixed);
    CHECK(big.size() == 60);
    CHECK(small.size() == 6);
    for (Mode mode : {Mode::unitriangular, Mode::triangular}) {
        CAPTURE(mode_name(mode));
        for (auto [blocks, dom] : {std::pair{big, std::vector<Elem>{}}, std::pair{small, fixed}}) {
            for (const auto& b : blocks) {
                auto f = sl2_factor(r, b, mode, dom);
                Matrix m = sl2_eval(r, f);
                CHECK((m(0, 0) == b[0] && m(0, 1) == b[1] && m(1, 0) == b[2] && m(1, 1) == b[3]));
                if (mode == Mode::unitriangular) {
                    CHECK_FALSE(f.head.has_value());
                    CHECK(f.factors.size() == 4);
                } else {
                    CHECK(f.head.has_value());
                    CHECK(f.factors.size() == 3);
                }
                for (std::size_t i = 0; i < f.factors.size(); ++i) {
                    CHECK(f.factors[i].first == (i % 2 == 0 ? Sign::plus : Sign::minus));
                    if (!dom.empty()) CHECK(std::count(dom.begin(), dom.end(), f.factors[i].second) == 1);
                }
            }
        }
    }
}

TEST_CASE("Weyl expansion reproduces non-simple generators") {
    for (const char* spec : {"gf(4)", "gf(9)"}) {
        for (int n : {4, 5}) {
            CAPTURE(spec);
            CAPTURE(n);
            auto r = tt::ring(spec);
            TavgenContext ctx(r, n, Mode::unitriangular);
            const auto& rs = ctx.roots();
            for (int c = 0; c < static_cast<int>(rs.classes.size()); ++c)
                for (const auto& p : param_domain(r, rs, c)) {
                    auto letters = ctx.expand({c, p});
                    CHECK(word_eval(r, rs, {n, letters}) == class_generator(r, rs, c, p));
                    if (rs.classes[c].simple) CHECK(letters.size() == 1);
                }
        }
    }
}

TEST_CASE("tavgen reproduces seeded random words with the fixed shape") {
    auto r = tt::ring("gf(4)");
    for (int n : {4, 5}) {
        for (Mode mode : {Mode::unitriangular, Mode::triangular}) {
            CAPTURE(n);
            CAPTURE(mode_name(mode));
            TavgenContext ctx(r, n, mode);
            CHECK_FALSE(ctx.widened());
            std::string expect = mode == Mode::triangular ? "H+-+" : (n == 4 ? "+-+-" : "+-+-+");
            CHECK(ctx.target_shape() == expect);
            std::mt19937_64 rng(2024 + n);
            std::size_t wrong = 0, bad_shape = 0;
            for (int i = 0; i < 500; ++i) {
                auto w = random_word(r, ctx.roots(), 20, rng);
                auto f = tavgen_factor(ctx, w);
                if (f.product != word_eval(r, ctx.roots(), w) || evaluate(r, n, f) != f.product) ++wrong;
                if (f.shape() != expect) ++bad_shape;
                for (const auto& x : f.factors) {
                    bool tri = x.sign == Sign::plus ? mat::is_upper_unitriangular(r, x.m)
                                                    : mat::is_lower_unitriangular(r, x.m);
                    if (!tri || !mat::preserves_form(r, x.m)) ++bad_shape;
                }
                if (f.head && (!mat::is_diagonal(*f.head) || !mat::preserves_form(r, *f.head))) ++bad_shape;
            }
            CHECK(wrong == 0);
            CHECK(bad_shape == 0);
        }
    }
}

TEST_CASE("tavgen over gf(9) and rank one") {
    auto r = tt::ring("gf(9)");
    for (int n : {3, 4, 5}) {
        for (Mode mode : {Mode::unitriangular, Mode::triangular}) {
            CAPTURE(n);
            CAPTURE(mode_name(mode));
            TavgenContext ctx(r, n, mode);
            std::mt19937_64 rng(99);
            for (int i = 0; i < 40; ++i) {
                auto w = random_word(r, ctx.roots(), 12, rng);
                auto f = tavgen_factor(ctx, w);
                CHECK(f.product == word_eval(r, ctx.roots(), w));
                CHECK(f.shape() == ctx.target_shape());
            }
        }
    }
}

TEST_CASE("empty word factors as the identity") {
    auto r = tt::ring("gf(4)");
    TavgenContext ctx(r, 4, Mode::unitriangular);
    auto f = tavgen_factor(ctx, {4, {}});
    CHECK(mat::is_identity(r, f.product));
    CHECK(f.shape() == "+-+-");
}

TEST_CASE("mode names") {
    CHECK(parse_mode("tri") == Mode::triangular);
    CHECK(parse_mode("unitriangular") == Mode::unitriangular);
    CHECK(mode_name(Mode::unitriangular) == "unitri");
    CHECK_THROWS_AS(parse_mode("upper"), InputError);
}

}  // TEST_SUITE
