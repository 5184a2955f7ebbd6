#include <doctest.h>

#include "test_util.hpp"
#include "twistfact/apair.hpp"
#include "twistfact/error.hpp"

using namespace twistfact;

TEST_SUITE("ring_core") {

TEST_CASE("apair_make accepts admissible pairs and reports both sides otherwise") {
    auto r = tt::ring("gf(4)");
    CHECK_NOTHROW(apair_make(r, tt::el(r, "0"), tt::el(r, "1")));
    CHECK_NOTHROW(apair_make(r, tt::el(r, "1"), tt::el(r, "g")));
    CHECK_NOTHROW(apair_make(r, r.zero(), r.zero()));
    try {
        apair_make(r, tt::el(r, "1"), tt::el(r, "1"));
        FAIL("expected InputError");
    } catch (const InputError& e) {
        std::string msg = e.what();
        CHECK(msg.find("1") != std::string::npos);
        CHECK(msg.find("0") != std::string::npos);
    }
}

TEST_CASE("frozen group-law values over gf(4) and zi(5)") {
    auto r = tt::ring("gf(4)");
    APair p{tt::el(r, "1"), tt::el(r, "g")};
    CHECK(apair_compose(r, p, p) == APair{r.zero(), r.one()});
    CHECK(apair_inverse(r, p) == APair{r.one(), tt::el(r, "g+1")});
    CHECK(apair_scale(r, tt::el(r, "g"), p) == APair{tt::el(r, "g"), tt::el(r, "g")});
    CHECK(apair_compose(r, {r.zero(), tt::el(r, "g")}, {r.zero(), tt::el(r, "1")}) == APair{r.zero(), tt::el(r, "g+1")});

    auto z = tt::ring("zi(5)");
    APair q = apair_make(z, tt::el(z, "1+i"), z.one());
    CHECK(apair_inverse(z, q) == APair{tt::el(z, "4+4*i"), z.one()});
}

TEST_CASE("enumeration sizes") {
    CHECK(apair_list(tt::ring("gf(4)")).size() == 8);
    CHECK(apair_list(tt::ring("gf(9)")).size() == 27);
    for (const char* spec : {"gf(9)", "zi(5)", "dual(gf(9))"}) {
        auto r = tt::ring(spec);
        Elem two = r.from_int(2);
        auto all = apair_enumerate(r);
        bool found = false;
        for (const auto& e : all) found = found || (e.pair == APair{two, two} && e.star);
        CHECK(found);
    }
}

TEST_CASE("enumeration is sorted, complete and flags units") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(5)", "zi(4)"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto all = apair_enumerate(r);
        std::size_t brute = 0;
        for (Elem t : r.elements())
            for (Elem u : r.elements()) brute += is_admissible(r, t, u);
        CHECK(all.size() == brute);
        for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].pair < all[i].pair);
        for (const auto& e : all) CHECK(e.star == r.is_unit(e.pair.u));
    }
}

TEST_CASE("group axioms hold exhaustively on gf(4) and gf(9)") {
    for (const char* spec : {"gf(4)", "gf(9)"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto ps = apair_list(r);
        const APair zero{r.zero(), r.zero()};
        std::size_t bad = 0;
        for (const auto& a : ps) {
            if (apair_compose(r, a, zero) != a || apair_compose(r, zero, a) != a) ++bad;
            if (apair_compose(r, a, apair_inverse(r, a)) != zero || apair_compose(r, apair_inverse(r, a), a) != zero) ++bad;
            for (const auto& b : ps) {
                auto ab = apair_compose(r, a, b);
                if (!is_admissible(r, ab.t, ab.u)) ++bad;
                for (const auto& c : ps)
                    if (apair_compose(r, apair_compose(r, a, b), c) != apair_compose(r, a, apair_compose(r, b, c))) ++bad;
            }
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("the unit action is multiplicative") {
    for (const char* spec : {"gf(4)", "gf(9)", "zi(4)", "dual(gf(4))", "zi(5)"}) {
        CAPTURE(spec);
        auto r = tt::ring(spec);
        auto units = r.members(Subset::units);
        std::size_t bad = 0;
        for (const auto& p : apair_list(r)) {
            if (apair_scale(r, r.one(), p) != p) ++bad;
            if (apair_scale(r, r.zero(), p) != APair{r.zero(), r.zero()}) ++bad;
            for (Elem s : units) {
                auto sp = apair_scale(r, s, p);
                if (!is_admissible(r, sp.t, sp.u)) ++bad;
                for (Elem t : units)
                    if (apair_scale(r, r.mul(s, t), p) != apair_scale(r, s, apair_scale(r, t, p))) ++bad;
            }
        }
        CHECK(bad == 0);
    }
}

}  // TEST_SUITE
