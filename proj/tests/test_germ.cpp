#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "viikit/germ.hpp"
#include "viikit/rng.hpp"

using namespace viikit;

static Rational R(const std::string& s) { return Rational::parse(s); }

static Germ germ_ex1() {
    Germ g;
    g.k = 3;
    g.s = 1;
    g.j = 1;
    g.coeffs = {{1, R("1")}};
    g.lambda = std::string("lambda");
    return g;
}

static Germ germ_ex2() {
    Germ g;
    g.k = 3;
    g.s = 3;
    g.j = 2;
    g.coeffs = {{2, R("1")}, {3, std::string("c3")}};
    g.lambda = std::string("lambda");
    return g;
}

TEST_CASE("germ validation") {
    CHECK(germ_violations(germ_ex1()).empty());
    CHECK(germ_violations(germ_ex2()).empty());

    Germ bad;
    bad.k = 4;
    bad.s = 2;
    bad.j = 2;
    bad.coeffs = {{2, R("1")}};
    bad.lambda = std::string("lambda");
    auto v = germ_violations(bad);
    REQUIRE_FALSE(v.empty());
    try {
        validate(bad);
        FAIL("expected InvalidGerm");
    } catch (const InvalidGerm& e) {
        CHECK_FALSE(e.violations.empty());
    }

    // c_j must be exactly 1.
    Germ off;
    off = germ_ex1();
    off.coeffs = {{1, R("2")}};
    CHECK_FALSE(germ_violations(off).empty());

    // j out of window.
    Germ window = germ_ex1();
    window.j = 3;  // j < k fails
    CHECK_FALSE(germ_violations(window).empty());
    Germ late = germ_ex2();
    late.j = 2;
    late.s = 1;  // j <= s fails
    late.coeffs = {{2, R("1")}};
    CHECK_FALSE(germ_violations(late).empty());

    // c_extra needs (k-1) | sk and lambda = 1.
    Germ extra = germ_ex1();  // k=3, s=1: sk = 3, k-1 = 2 does not divide 3
    extra.c_extra = R("5");
    CHECK_FALSE(germ_violations(extra).empty());
    Germ extra_ok;
    extra_ok.k = 3;
    extra_ok.s = 2;  // sk = 6, divisible by 2
    extra_ok.j = 1;
    extra_ok.coeffs = {{1, R("1")}};
    extra_ok.lambda = R("1");
    extra_ok.c_extra = R("5");
    CHECK(germ_violations(extra_ok).empty());
    extra_ok.lambda = std::string("lambda");  // symbolic lambda is not 1
    CHECK_FALSE(germ_violations(extra_ok).empty());
}

TEST_CASE("index_m frozen examples") {
    CHECK(index_m(germ_ex1()) == 2);  // (3-1)/gcd(2,1)
    CHECK(index_m(germ_ex2()) == 2);  // (3-1)/gcd(2,3)
    Germ g;
    g.k = 3;
    g.s = 2;
    g.j = 1;
    g.coeffs = {{1, R("1")}};
    CHECK(index_m(g) == 1);  // (k-1) | s
    Germ h;
    h.k = 9;
    h.s = 6;
    h.j = 1;
    h.coeffs = {{1, R("1")}};
    CHECK(index_m(h) == 4);  // 8/gcd(8,6)
}

TEST_CASE("reduce: first worked example") {
    Germ r = reduce(germ_ex1(), 2);
    CHECK(r.k == 3);
    CHECK(r.s == 2);
    CHECK(r.j == 2);
    REQUIRE(r.coeffs.size() == 1);
    REQUIRE(r.coeffs.count(2) == 1);
    CHECK(scalar_is_one(r.coeffs.at(2)));
    CHECK(scalar_str(r.lambda) == "lambda");
    CHECK(index_m(r) == 1);
}

TEST_CASE("reduce: second worked example") {
    Germ r = reduce(germ_ex2(), 2);
    CHECK(r.k == 3);
    CHECK(r.s == 4);   // 2*3 - 1*(3-1)
    CHECK(r.j == 1);   // 2*2 - 1*3
    REQUIRE(r.coeffs.size() == 2);
    REQUIRE(r.coeffs.count(1) == 1);
    CHECK(scalar_is_one(r.coeffs.at(1)));
    REQUIRE(r.coeffs.count(3) == 1);
    CHECK(scalar_str(r.coeffs.at(3)) == "c3");
    CHECK(index_m(r) == 1);
    CHECK(germ_violations(r).empty());
}

TEST_CASE("reduce: q=1 is the identity, bad q is rejected") {
    Germ g = germ_ex2();
    Germ same = reduce(g, 1);
    CHECK(same.k == g.k);
    CHECK(same.s == g.s);
    CHECK(same.j == g.j);
    CHECK(same.coeffs.size() == g.coeffs.size());

    CHECK_THROWS_AS(reduce(germ_ex1(), 3), InvalidReduction);  // 3 does not divide k-1=2
    Germ h;
    h.k = 7;  // k-1 = 6
    h.s = 2;
    h.j = 1;
    h.coeffs = {{1, R("1")}};
    CHECK_THROWS_AS(reduce(h, 2), InvalidReduction);  // 6 does not divide 2*2
    CHECK_NOTHROW(reduce(h, 3));                      // 6 | 6

    // A nonzero extra coefficient cannot go through a q >= 2 rewrite.
    Germ extra;
    extra.k = 3;
    extra.s = 2;
    extra.j = 1;
    extra.coeffs = {{1, R("1")}};
    extra.lambda = R("1");
    extra.c_extra = R("5");
    CHECK_THROWS_AS(reduce(extra, 2), InvalidReduction);
    Germ copy = reduce(extra, 1);
    CHECK(scalar_str(copy.c_extra) == "5");
}

TEST_CASE("reduce properties over seeded valid germs") {
    Rng rng(17);
    int reduced_count = 0;
    for (int t = 0; t < 400; ++t) {
        Germ g;
        g.k = rng.integer(2, 9);
        g.s = rng.integer(1, 12);
        g.j = rng.integer(1, std::min(g.k - 1, g.s));
        g.coeffs[g.j] = R("1");
        // sprinkle extra coefficients
        for (long long p = g.j + 1; p <= g.s; ++p)
            if (rng.integer(0, 2) == 0) g.coeffs[p] = Rational(rng.integer(1, 9));
        if (!germ_violations(g).empty()) continue;  // gcd condition may fail
        long long m = index_m(g);
        Germ r = reduce(g, m);
        ++reduced_count;
        CHECK(r.k == g.k);              // k is preserved
        CHECK(index_m(r) == 1);         // one step lands at index one
        CHECK(germ_violations(r).empty());  // normal form survives
        // exponent sanity: window respected, c_j lands on zeta^{j'}
        for (const auto& [p, c] : r.coeffs) {
            CHECK(p >= r.j);
            CHECK(p <= r.s);
            CHECK_FALSE(scalar_is_zero(c));
        }
        CHECK(scalar_is_one(r.coeffs.at(r.j)));
        CHECK(r.j >= 1);
        CHECK(r.j < r.k);
        CHECK(r.j <= r.s);
    }
    CHECK(reduced_count > 150);
}

TEST_CASE("cross_check joins surface and germ invariants") {
    CurveConfiguration ex1;
    ex1.cycle = {{-2, 1}};
    ex1.branches = {{0, {-2, -2}}};
    ConsistencyReport r = cross_check(ex1, germ_ex1());
    REQUIRE(r.config_k.has_value());
    CHECK(*r.config_k == 3);
    CHECK(r.germ_k == 3);
    CHECK(r.k_match);
    REQUIRE(r.config_m.has_value());
    CHECK(*r.config_m == 2);
    CHECK(r.germ_m == 2);
    CHECK(r.m_match);
    CHECK(r.pass());

    CurveConfiguration ex2;
    ex2.cycle = {{-3, 0}, {-2, 0}, {-2, 0}};
    ex2.branches = {{2, {-3}}};
    ConsistencyReport r2 = cross_check(ex2, germ_ex2());
    CHECK(r2.pass());

    // Cross pairing: both surfaces have k=3, m=2, so the numbers still agree.
    ConsistencyReport rx = cross_check(ex1, germ_ex2());
    CHECK(rx.pass());

    // A mismatched pairing reports rather than throws.
    Germ other;
    other.k = 4;
    other.s = 3;
    other.j = 1;
    other.coeffs = {{1, R("1")}};
    ConsistencyReport bad = cross_check(ex1, other);
    CHECK_FALSE(bad.k_match);
    CHECK_FALSE(bad.pass());

    // Enoki-type surface: k unavailable, embedded as a note.
    CurveConfiguration enoki;
    enoki.cycle = {{-2, 0}, {-2, 0}};
    ConsistencyReport en = cross_check(enoki, germ_ex1());
    CHECK_FALSE(en.config_k.has_value());
    CHECK(en.config_k_note.has_value());
    CHECK_FALSE(en.pass());
}

TEST_CASE("germ scalar helpers") {
    CHECK(scalar_is_zero(GermScalar(R("0"))));
    CHECK_FALSE(scalar_is_zero(GermScalar(R("1/2"))));
    CHECK_FALSE(scalar_is_zero(GermScalar(std::string("c3"))));  // symbols are generic
    CHECK(scalar_is_one(GermScalar(R("1"))));
    CHECK_FALSE(scalar_is_one(GermScalar(std::string("c3"))));
    CHECK(scalar_str(GermScalar(R("-3/4"))) == "-3/4");
    CHECK(scalar_str(GermScalar(std::string("lambda"))) == "lambda");
    CHECK(scalar_str(parse_scalar("5/6")) == "5/6");
    CHECK(scalar_str(parse_scalar("c3")) == "c3");
}
