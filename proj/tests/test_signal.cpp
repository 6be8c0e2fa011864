#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "alltoplab/families.hpp"
#include "alltoplab/signal.hpp"
#include "testutil.hpp"

using namespace alltoplab;

namespace {

// Independent float oracle: expand the whole set into complex vectors and
// sum the 2*C(N,2) ordered correlations directly.
std::pair<double, double> float_rms_max(const SignalSet& S) {
    std::vector<std::vector<std::complex<double>>> dense;
    for (const auto& v : S.vectors) {
        std::vector<std::complex<double>> w(S.K);
        if (v.kind == SignalVector::Kind::StandardBasis) {
            w[v.unit] = 1.0;
        } else {
            REQUIRE(v.kind == SignalVector::Kind::Exponent);
            for (uint64_t x = 0; x < S.K; ++x)
                w[x] = std::polar(1.0 / std::sqrt(double(S.K)),
                                  2.0 * M_PI * v.exps[x] / S.p);
        }
        dense.push_back(std::move(w));
    }
    double sum = 0, mx = 0;
    for (size_t i = 0; i < dense.size(); ++i)
        for (size_t j = 0; j < dense.size(); ++j) {
            if (i == j) continue;
            std::complex<double> ip = 0;
            for (uint64_t x = 0; x < S.K; ++x)
                ip += std::conj(dense[i][x]) * dense[j][x];
            sum += std::norm(ip);
            mx = std::max(mx, std::norm(ip));
        }
    size_t N = dense.size();
    return {sum / (double(N) * (N - 1)), mx};
}

} // namespace

TEST_CASE("complete MUB signal sets at q = 5", "[signal]") {
    auto M = build_planar_mubs(quadratic_planar(FieldSpec::make(5, 1)));
    auto S = to_signal_set(M);
    REQUIRE(S.N() == 30);
    REQUIRE(S.K == 5);
    REQUIRE(S.name == "planar-q5");
    REQUIRE(S.all_exact());

    auto rep = correlation_report(S);
    REQUIRE(rep.exact);
    REQUIRE(rep.i_max_sq == Rational(1, 5));
    REQUIRE(rep.i_rms_sq == Rational(5, 29));
    REQUIRE(rep.welch_rms_sq == Rational(25, 29 * 5));
    REQUIRE(rep.welch_max_sq == rep.welch_rms_sq);
    REQUIRE(rep.levenstein_applicable);
    REQUIRE(rep.levenstein_sq == Rational(1, 5));
    REQUIRE(rep.meets_welch_rms);
    REQUIRE(rep.meets_levenstein);
    REQUIRE_FALSE(rep.meets_welch_max); // 1/5 > 5/29, strict
    // e_0 against the constant vector of V_0 is the first maximal pair.
    REQUIRE(rep.max_witness == std::pair<uint64_t, uint64_t>{0, 5});

    SECTION("agrees with the direct float expansion") {
        auto [rms, mx] = float_rms_max(S);
        REQUIRE_THAT(double(rep.i_rms_sq), Catch::Matchers::WithinAbs(rms, 1e-12));
        REQUIRE_THAT(double(rep.i_max_sq), Catch::Matchers::WithinAbs(mx, 1e-12));
    }

    SECTION("the correlation spectrum is two-valued") {
        // Re-derive every pair value from public pieces: 0 or q only.
        for (size_t i = 0; i < S.N(); ++i)
            for (size_t j = i + 1; j < S.N(); ++j) {
                const auto& u = S.vectors[i];
                const auto& v = S.vectors[j];
                BigInt n;
                if (i < 5 && j < 5) {
                    n = 0;
                } else if (i < 5) {
                    n = 5;
                } else {
                    ExponentVector eu{5, 0, 0, u.exps}, ev{5, 0, 0, v.exps};
                    n = norm_sq(inner_product_scaled(eu, ev)).as_integer().value();
                }
                REQUIRE((n == 0 || n == 5));
            }
    }
}

TEST_CASE("bound arithmetic for q = 7 and q = 25", "[signal]") {
    auto M7 = build_alltop_mubs(cubic_alltop(FieldSpec::make(7, 1)));
    auto S7 = to_signal_set(M7);
    REQUIRE(S7.N() == 56);
    auto r7 = correlation_report(S7);
    REQUIRE(r7.levenstein_sq == Rational(1, 7)); // (112-49-7)/(8*49)
    REQUIRE(r7.i_max_sq == Rational(1, 7));
    REQUIRE(r7.i_rms_sq == r7.welch_rms_sq);
    REQUIRE(r7.meets_levenstein);

    auto M25 = build_alltop_mubs(cubic_alltop(FieldSpec::make(5, 2)));
    auto r25 = correlation_report(to_signal_set(M25));
    REQUIRE(r25.i_max_sq == Rational(1, 25));
    REQUIRE(r25.i_rms_sq == Rational(650 - 25, 649 * 25));
    REQUIRE(r25.meets_welch_rms);
    REQUIRE(r25.meets_levenstein);
    REQUIRE(r25.i_max_sq >= r25.i_rms_sq);
}

TEST_CASE("large collections flatten without being surveyed", "[signal]") {
    auto S = to_signal_set(build_alltop_mubs(new_alltop(7, 1)));
    REQUIRE(S.N() == 2450);
    REQUIRE(S.K == 49);
    REQUIRE(S.name == "alltop-q49");
}

TEST_CASE("an orthonormal basis alone meets Welch with equality", "[signal]") {
    SignalSet S;
    S.name = "basis-only";
    S.K = 5;
    for (ElemIndex i = 0; i < 5; ++i)
        S.vectors.push_back({SignalVector::Kind::StandardBasis, i, {}, {}});
    auto rep = correlation_report(S);
    REQUIRE(rep.exact);
    REQUIRE(rep.i_max_sq == 0);
    REQUIRE(rep.i_rms_sq == 0);
    REQUIRE(rep.welch_rms_sq == 0);
    REQUIRE(rep.meets_welch_rms);
    REQUIRE(rep.meets_welch_max);
    REQUIRE_FALSE(rep.levenstein_applicable); // 5 <= 25
    REQUIRE_FALSE(rep.meets_levenstein);
}

TEST_CASE("report is identical across worker counts", "[signal][threads]") {
    auto S = to_signal_set(build_planar_mubs(quadratic_planar(FieldSpec::make(7, 1))));
    auto r1 = correlation_report(S, 1);
    auto r4 = correlation_report(S, 4);
    REQUIRE(r1.i_rms_sq == r4.i_rms_sq);
    REQUIRE(r1.i_max_sq == r4.i_max_sq);
    REQUIRE(r1.max_witness == r4.max_witness);
}

TEST_CASE("degenerate and irrational inputs are rejected", "[signal][errors]") {
    SignalSet empty;
    empty.K = 3;
    REQUIRE_THROWS_AS(correlation_report(empty), DegenerateSet);
    empty.vectors.push_back({SignalVector::Kind::StandardBasis, 0, {}, {}});
    REQUIRE_THROWS_AS(correlation_report(empty), DegenerateSet);

    SignalSet zero_dim;
    zero_dim.vectors.resize(2);
    REQUIRE_THROWS_AS(correlation_report(zero_dim), DegenerateSet);

    // 1 + w^4 over p=5 has |.|^2 = 2 + w + w^4, not a rational integer.
    SignalSet bad;
    bad.K = 2;
    bad.p = 5;
    bad.vectors.push_back({SignalVector::Kind::Exponent, 0, {0, 0}, {}});
    bad.vectors.push_back({SignalVector::Kind::Exponent, 0, {0, 1}, {}});
    REQUIRE_THROWS_MATCHES(
        correlation_report(bad), Error,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("rational-integer")));
}

TEST_CASE("dense vectors take the float path", "[signal]") {
    const double s = 1.0 / std::sqrt(2.0);
    SignalSet S;
    S.name = "dense-demo";
    S.K = 2;
    S.vectors.push_back({SignalVector::Kind::Dense, 0, {}, {{1, 0}, {0, 0}}});
    S.vectors.push_back({SignalVector::Kind::Dense, 0, {}, {{s, 0}, {0, s}}});
    REQUIRE_FALSE(S.all_exact());
    auto rep = correlation_report(S);
    REQUIRE_FALSE(rep.exact);
    REQUIRE(abs(rep.i_max_sq - Rational(1, 2)) < Rational(1, 1000000));
    REQUIRE_FALSE(rep.levenstein_applicable);

    SECTION("mixing dense and exponent vectors still works") {
        SignalSet mix;
        mix.K = 5;
        mix.p = 5;
        mix.vectors.push_back(
            {SignalVector::Kind::Exponent, 0, {0, 0, 0, 0, 0}, {}});
        mix.vectors.push_back({SignalVector::Kind::StandardBasis, 2, {}, {}});
        std::vector<std::complex<double>> e0(5);
        e0[0] = 1.0;
        mix.vectors.push_back({SignalVector::Kind::Dense, 0, {}, e0});
        auto r = correlation_report(mix);
        REQUIRE_FALSE(r.exact);
        REQUIRE(abs(r.i_max_sq - Rational(1, 5)) < Rational(1, 1000000));
    }

    SECTION("non-unit dense vectors are rejected") {
        SignalSet off;
        off.K = 2;
        off.vectors.push_back({SignalVector::Kind::Dense, 0, {}, {{2, 0}, {0, 0}}});
        off.vectors.push_back({SignalVector::Kind::Dense, 0, {}, {{0, 0}, {1, 0}}});
        REQUIRE_THROWS_MATCHES(
            correlation_report(off), DegenerateSet,
            Catch::Matchers::MessageMatches(
                Catch::Matchers::ContainsSubstring("unit norm")));
    }
}
