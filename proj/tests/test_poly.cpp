#include <catch2/catch_amalgamated.hpp>

#include "alltoplab/poly.hpp"
#include "testutil.hpp"

using namespace alltoplab;

namespace {

// Random sparse polynomial: up to `max_terms` terms with exponents < q.
PolyFn random_poly(const Field& F, int max_terms) {
    PolyFn f(F);
    int n = 1 + int(testutil::rand_below(uint32_t(max_terms)));
    for (int i = 0; i < n; ++i)
        f.add_term(testutil::rand_below(F->q()), testutil::rand_below(F->q()));
    return f;
}

} // namespace

TEST_CASE("evaluation and tabulation", "[poly]") {
    auto F5 = FieldSpec::make(5, 1);
    auto cube = PolyFn::monomial(F5, 1, 3);
    REQUIRE(cube.evaluate(2) == 3);
    REQUIRE(PolyFn::monomial(F5, 1, 2).tabulate() == FnTable{0, 1, 4, 4, 1});

    auto F49 = FieldSpec::make(7, 2);
    ElemIndex alpha = F49->from_coeffs({0, 1});
    REQUIRE(PolyFn::monomial(F49, 1, 9).evaluate(alpha) == F49->pow(alpha, 9));
}

TEST_CASE("exponents fold modulo x^q - x", "[poly]") {
    auto F25 = FieldSpec::make(5, 2);
    uint32_t q = F25->q();
    // x^q = x, x^(q+3) = x^4, and constants stay put.
    REQUIRE(PolyFn::monomial(F25, 1, q) == PolyFn::identity(F25));
    REQUIRE(PolyFn::monomial(F25, 1, q + 3) == PolyFn::monomial(F25, 1, 4));
    REQUIRE(PolyFn::monomial(F25, 3, 0) == PolyFn::constant(F25, 3));
    // x^(q-1) is not the constant 1: they differ at 0.
    REQUIRE(PolyFn::monomial(F25, 1, q - 1) != PolyFn::constant(F25, 1));

    SECTION("reduction preserves the function") {
        for (uint64_t e : {uint64_t(q), uint64_t(q + 7), uint64_t(3) * q * q + 5}) {
            auto folded = PolyFn::monomial(F25, 1, e);
            for (ElemIndex x = 0; x < q; ++x)
                REQUIRE(folded.evaluate(x) == F25->pow(x, e));
        }
    }
}

TEST_CASE("ring operations agree with pointwise arithmetic", "[poly]") {
    auto F25 = FieldSpec::make(5, 2);
    auto f = parse_poly("x^3 + 2*x", F25);
    auto g = parse_poly("[0,1]*x^5 + 4", F25);
    auto sum = f + g, prod = f * g, diff = f - g;
    for (ElemIndex x = 0; x < F25->q(); ++x) {
        REQUIRE(sum.evaluate(x) == F25->add(f.evaluate(x), g.evaluate(x)));
        REQUIRE(prod.evaluate(x) == F25->mul(f.evaluate(x), g.evaluate(x)));
        REQUIRE(diff.evaluate(x) == F25->sub(f.evaluate(x), g.evaluate(x)));
    }
    REQUIRE((f - f).is_zero_fn());

    auto cube = PolyFn::monomial(F25, 1, 3);
    REQUIRE((cube + (-cube)).is_zero_fn());
}

TEST_CASE("composition", "[poly]") {
    auto F25 = FieldSpec::make(5, 2);
    auto f = parse_poly("x^3 + 2*x + 1", F25);
    REQUIRE(compose(f, PolyFn::identity(F25)) == f);
    REQUIRE(compose(PolyFn::identity(F25), f) == f);
    REQUIRE(compose(parse_poly("x^2", F25), parse_poly("x^5", F25)) ==
            parse_poly("x^10", F25));

    SECTION("matches pointwise composition on random pairs") {
        for (int i = 0; i < 20; ++i) {
            auto a = random_poly(F25, 3), b = random_poly(F25, 3);
            auto c = compose(a, b);
            for (ElemIndex x = 0; x < F25->q(); ++x)
                REQUIRE(c.evaluate(x) == a.evaluate(b.evaluate(x)));
        }
    }
}

TEST_CASE("difference operator delta", "[poly]") {
    auto F5 = FieldSpec::make(5, 1);
    REQUIRE(delta(parse_poly("x^2", F5), 1) == parse_poly("2*x + 1", F5));
    REQUIRE(delta(parse_poly("x^3", F5), 1) == parse_poly("3*x^2 + 3*x + 1", F5));
    REQUIRE(delta(parse_poly("x", F5), 3) == parse_poly("3", F5));

    SECTION("polynomial path equals pointwise table") {
        auto F49 = FieldSpec::make(7, 2);
        auto f = PolyFn::monomial(F49, 1, 9);
        for (ElemIndex a : {ElemIndex(7), ElemIndex(1), ElemIndex(13)}) {
            auto d = delta(f, a).tabulate();
            for (ElemIndex x = 0; x < F49->q(); ++x)
                REQUIRE(d[x] == F49->sub(f.evaluate(F49->add(x, a)), f.evaluate(x)));
        }
    }

    SECTION("random cross-check on F_25") {
        auto F25 = FieldSpec::make(5, 2);
        for (int i = 0; i < 20; ++i) {
            auto f = random_poly(F25, 4);
            ElemIndex a = testutil::rand_below(F25->q());
            auto d = delta(f, a);
            REQUIRE(d.degree() <= f.degree());
            for (ElemIndex x = 0; x < F25->q(); ++x)
                REQUIRE(d.evaluate(x) ==
                        F25->sub(f.evaluate(F25->add(x, a)), f.evaluate(x)));
        }
    }

    SECTION("shift composes additively") {
        auto F25 = FieldSpec::make(5, 2);
        auto f = parse_poly("x^6 + [1,2]*x^2 + 3", F25);
        REQUIRE(shift(f, 0) == f);
        for (int i = 0; i < 10; ++i) {
            ElemIndex a = testutil::rand_below(25), b = testutil::rand_below(25);
            REQUIRE(shift(shift(f, a), b) == shift(f, F25->add(a, b)));
        }
    }
}

TEST_CASE("symmetric form dform", "[poly]") {
    auto F5 = FieldSpec::make(5, 1);
    auto sq = parse_poly("x^2", F5);
    for (ElemIndex x = 0; x < 5; ++x) {
        REQUIRE(dform(sq, x, 0) == 0); // -f(0) = 0 here
        for (ElemIndex y = 0; y < 5; ++y)
            REQUIRE(dform(sq, x, y) == F5->mul(2, F5->mul(x, y)));
    }

    auto F7 = FieldSpec::make(7, 1);
    REQUIRE(dform(parse_poly("x^3", F7), 1, 1) == 6);

    // dform(f, x, 0) = -f(0) for any f.
    auto F25 = FieldSpec::make(5, 2);
    auto f = parse_poly("x^3 + [2,3]", F25);
    for (ElemIndex x = 0; x < 25; ++x)
        REQUIRE(dform(f, x, 0) == F25->neg(f.evaluate(0)));
}

TEST_CASE("literal parsing", "[poly][io]") {
    auto F25 = FieldSpec::make(5, 2);
    auto F5 = FieldSpec::make(5, 1);

    REQUIRE(parse_poly("x^9", F25) == PolyFn::monomial(F25, 1, 9));
    REQUIRE(parse_poly("x", F5) == PolyFn::identity(F5));
    REQUIRE(parse_poly("7", F5) == PolyFn::constant(F5, 2));
    REQUIRE(parse_poly("-x^3 + 2", F5) ==
            PolyFn::monomial(F5, 4, 3) + PolyFn::constant(F5, 2));
    REQUIRE(parse_poly("x^5 - x", F25) ==
            PolyFn::monomial(F25, 1, 5) + PolyFn::monomial(F25, 4, 1));
    REQUIRE(parse_poly("[0,1]*x^2", F25) ==
            PolyFn::monomial(F25, F25->from_coeffs({0, 1}), 2));
    REQUIRE(parse_poly("[2,4]", F25) == PolyFn::constant(F25, F25->from_coeffs({2, 4})));
    REQUIRE(parse_poly(" 2 * x ^ 6 + [0, 1] * x ^ 2 ", F25) ==
            parse_poly("2*x^6+[0,1]*x^2", F25));
    REQUIRE(parse_poly("2x", F5) == PolyFn::monomial(F5, 2, 1)); // implicit '*'
    REQUIRE(parse_poly("x + x", F5) == PolyFn::monomial(F5, 2, 1));
    REQUIRE(parse_poly("x - x", F5).is_zero_fn());
    REQUIRE(parse_poly("[-1,1]", F25) == PolyFn::constant(F25, F25->from_coeffs({4, 1})));

    SECTION("malformed literals throw ParseError") {
        for (const char* bad : {"", "x^", "[1,2", "x++1", "y", "*x", "x^-2", "[1,2,3]"})
            REQUIRE_THROWS_AS(parse_poly(bad, F25), ParseError);
    }
}

TEST_CASE("literal rendering round-trips", "[poly][io]") {
    auto F25 = FieldSpec::make(5, 2);
    auto f = parse_poly("2*x^6 + [0,1]*x^2", F25);
    REQUIRE(render_poly(f) == "2*x^6 + [0,1]*x^2");
    REQUIRE(render_poly(PolyFn(F25)) == "0");
    REQUIRE(render_poly(PolyFn::identity(F25)) == "x");
    REQUIRE(render_poly(parse_poly("x^9", F25)) == "x^9");

    for (int i = 0; i < 20; ++i) {
        auto g = random_poly(F25, 4);
        REQUIRE(parse_poly(render_poly(g), F25) == g);
    }
}

TEST_CASE("polynomials reject cross-field mixing", "[poly][errors]") {
    auto F5 = FieldSpec::make(5, 1);
    auto F25 = FieldSpec::make(5, 2);
    auto f = PolyFn::identity(F5), g = PolyFn::identity(F25);
    REQUIRE_THROWS_AS(f + g, FieldMismatch);
    REQUIRE_THROWS_AS(f * g, FieldMismatch);
    REQUIRE_THROWS_AS(compose(f, g), FieldMismatch);
}
