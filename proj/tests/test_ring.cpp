#include <algorithm>

#include <doctest.h>

#include "test_util.hpp"
#include "twistfact/apair.hpp"
#include "twistfact/error.hpp"

using namespace twistfact;

namespace {

const char* kRings[] = {"gf(4)",  "gf(9)",       "gf(16)",       "gf(25)",      "zi(3)",
                        "zi(4)",  "zi(5)",       "zi(9)",        "dual(gf(4))", "dual(gf(9))",
                        "prodc(gf(4),gf(9))", "swap(gf(4))", "dual(dual(gf(4)))"};

}  // namespace

TEST_SUITE("ring_core") {

TEST_CASE("gf(4) carrier, Frobenius and fixed/skew parts") {
    auto r = tt::ring("gf(4)");
    CHECK(r.size() == 4);
    CHECK(tt::formatted(r, r.elements()) == std::vector<std::string>{"0", "1", "g", "g+1"});
    Elem g = tt::el(r, "g");
    CHECK(r.mul(g, g) == tt::el(r, "g+1"));
    for (Elem x : r.elements()) CHECK(r.theta(x) == r.mul(x, x));
    CHECK(tt::formatted(r, r.members(Subset::fixed)) == std::vector<std::string>{"0", "1"});
    CHECK(tt::formatted(r, r.members(Subset::skew)) == std::vector<std::string>{"0", "1"});
}

TEST_CASE("zi(5) has 25 elements, 16 units and conjugation") {
    auto r = tt::ring("zi(5)");
    CHECK(r.size() == 25);
    // 5 = (2+i)(2-i) splits, so the non-units are the 9 elements of the two maximal ideals
    CHECK(r.members(Subset::units).size() == 16);
    CHECK(r.theta(tt::el(r, "2+3*i")) == tt::el(r, "2+2*i"));
    CHECK(r.theta(tt::el(r, "4")) == tt::el(r, "4"));
}

TEST_CASE("dual(gf(9)) lifts the Frobenius componentwise") {
    auto r = tt::ring("dual(gf(9))");
    CHECK(r.size() == 81);
    auto inner = tt::ring("gf(9)");
    Elem x = tt::el(r, "g+(g+1)*e");
    CHECK(r.format(r.theta(x)) == r.format(tt::el(r, inner.format(inner.theta(tt::el(inner, "g"))) + "+(" +
                                                      inner.format(inner.theta(tt::el(inner, "g+1"))) + ")*e")));
    Elem e = tt::el(r, "e");
    CHECK(r.mul(e, e) == r.zero());
    CHECK(r.theta(e) == e);
}

TEST_CASE("theta is an involutive ring automorphism on every instance") {
    for (const char* spec : kRings) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        CHECK(r.theta(r.one()) == r.one());
        bool ok = true;
        auto xs = r.elements();
        for (Elem a : xs) {
            ok = ok && r.theta(r.theta(a)) == a;
            for (Elem b : xs) {
                if (!ok) break;
                ok = r.theta(r.add(a, b)) == r.add(r.theta(a), r.theta(b)) &&
                     r.theta(r.mul(a, b)) == r.mul(r.theta(a), r.theta(b));
            }
        }
        CHECK(ok);
        CHECK_FALSE(r.theta_trivial());
    }
}

TEST_CASE("literals round-trip through format and parse") {
    for (const char* spec : kRings) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        for (Elem a : r.elements()) CHECK(r.parse_element(r.format(a)) == a);
    }
}

TEST_CASE("fixed plus skew decomposition is unique when 2 is a unit") {
    for (const char* spec : {"gf(9)", "gf(25)", "zi(5)", "zi(9)", "dual(gf(9))"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        REQUIRE(r.is_unit(r.from_int(2)));
        auto fixed = r.members(Subset::fixed), skew = r.members(Subset::skew);
        std::vector<int> hits(r.size(), 0);
        for (Elem f : fixed)
            for (Elem s : skew) ++hits[r.add(f, s).id];
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
}

TEST_CASE("inverses are two-sided") {
    for (const char* spec : kRings) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        for (Elem a : r.members(Subset::units)) CHECK(r.mul(a, r.inv(a)) == r.one());
        for (Elem a : r.elements())
            if (!r.is_unit(a)) CHECK_THROWS_AS(r.inv(a), HypothesisError);
    }
}

TEST_CASE("malformed and unsupported specs are rejected") {
    for (const char* spec : {"gf(8)", "gf(6)", "zi(2)", "foo", "gf(4", "prodc(gf(4))", "dual()"}) {
        CAPTURE(spec);
        CHECK_THROWS_AS(tt::ring(spec), InputError);
    }
    CHECK_THROWS_AS(tt::ring("gf(4)").parse_element("h+1"), InputError);
}

TEST_CASE("carrier cap refuses large rings") {
    Caps caps = Caps::parse("carrier=50");
    CHECK_THROWS_AS(InvolutiveRing::parse("zi(9)", caps), CapExceeded);
    CHECK(InvolutiveRing::parse("zi(5)", caps).size() == 25);
    CHECK(Caps::parse("1000").carrier == 1000);
    auto c = Caps::parse("closure=7,search=9");
    CHECK(c.closure == 7);
    CHECK(c.search == 9);
    CHECK_THROWS_AS(Caps::parse("bogus=1"), InputError);
}

}  // TEST_SUITE
