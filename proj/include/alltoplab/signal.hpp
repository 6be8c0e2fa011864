#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "alltoplab/mub.hpp"

namespace alltoplab {

using Rational = boost::multiprecision::cpp_rational;

/// One signal of a set. Three storage forms:
///   StandardBasis -- e_unit, kept symbolic so E stays exact;
///   Exponent      -- (1/sqrt(K)) * (w^exps[0], ..., w^exps[K-1]);
///   Dense         -- arbitrary complex entries (loaded data, approximate).
struct SignalVector {
    enum class Kind { StandardBasis, Exponent, Dense };
    Kind kind = Kind::StandardBasis;
    ElemIndex unit = 0;
    std::vector<uint8_t> exps;
    std::vector<std::complex<double>> entries;
};

/// N unit vectors in C^K. `p` is the root-of-unity order shared by all
/// Exponent vectors (0 when there are none).
struct SignalSet {
    std::string name;
    uint64_t K = 0;
    uint32_t p = 0;
    std::vector<SignalVector> vectors;

    uint64_t N() const { return vectors.size(); }

    /// True when every pairwise correlation can be computed in Z[w].
    bool all_exact() const {
        for (const auto& v : vectors)
            if (v.kind == SignalVector::Kind::Dense) return false;
        return true;
    }
};

/// Flattens a MUB collection into its (q^2+q, q) signal set: the standard
/// basis first, then each V_a with b ascending. The collection is trusted as
/// given; run verify_mub_collection first if it came from outside.
inline SignalSet to_signal_set(const MUBCollection& M) {
    const uint64_t q = M.q();
    SignalSet S;
    S.name = (M.construction == Basis::Kind::Planar ? "planar-q" : "alltop-q") +
             std::to_string(q);
    S.K = q;
    S.p = M.field->p();
    S.vectors.reserve(q * (q + 1));
    for (ElemIndex i = 0; i < q; ++i)
        S.vectors.push_back({SignalVector::Kind::StandardBasis, i, {}, {}});
    for (size_t bi = 1; bi < M.bases.size(); ++bi)
        for (const auto& v : M.bases[bi].vectors)
            S.vectors.push_back({SignalVector::Kind::Exponent, 0, v.exps, {}});
    return S;
}

/// Squared correlation amplitudes of a set against the Welch and Levenstein
/// bounds. All quantities are squared so everything lives in Q: the i_max
/// witness is the lexicographically first pair (i, j), i < j, attaining the
/// maximum. `exact` records whether the correlations were computed in Z[w]
/// (rationals are exact) or through the dense float path (rationals hold the
/// exact value of the computed double).
struct CorrelationReport {
    uint64_t N = 0, K = 0;
    bool exact = true;
    Rational i_rms_sq, i_max_sq;
    std::pair<uint64_t, uint64_t> max_witness{0, 0};
    Rational welch_rms_sq, welch_max_sq;
    bool levenstein_applicable = false; // needs N > K^2
    Rational levenstein_sq;             // meaningful only when applicable
    bool meets_welch_rms = false, meets_welch_max = false,
         meets_levenstein = false;
};

namespace detail {

/// n such that |<v_i|v_j>|^2 = n / K^2 exactly. Only defined for the two
/// symbolic vector kinds.
inline BigInt pair_numerator_sq(const SignalSet& S, uint64_t i, uint64_t j) {
    const auto& u = S.vectors[i];
    const auto& v = S.vectors[j];
    const bool us = u.kind == SignalVector::Kind::StandardBasis;
    const bool vs = v.kind == SignalVector::Kind::StandardBasis;
    if (us && vs) return u.unit == v.unit ? BigInt(S.K) * S.K : BigInt(0);
    // <e_i | (1/sqrt K) w^t> picks out one entry of squared magnitude 1/K.
    if (us || vs) return BigInt(S.K);
    auto n = norm_sq(scaled_inner(S.p, u.exps, v.exps)).as_integer();
    if (!n)
        throw Error("scaled inner product of vectors " + std::to_string(i) +
                    " and " + std::to_string(j) +
                    " does not have rational-integer squared magnitude");
    return *n;
}

inline std::vector<std::complex<double>> densify(const SignalSet& S,
                                                 const SignalVector& v) {
    if (v.kind == SignalVector::Kind::Dense) return v.entries;
    std::vector<std::complex<double>> out(S.K);
    if (v.kind == SignalVector::Kind::StandardBasis) {
        out[v.unit] = 1.0;
        return out;
    }
    const double scale = 1.0 / std::sqrt(double(S.K));
    for (uint64_t x = 0; x < S.K; ++x)
        out[x] = std::polar(scale, 2.0 * M_PI * v.exps[x] / double(S.p));
    return out;
}

/// Exact dyadic rational equal to the double (doubles are m * 2^e).
inline Rational rational_from_double(double x) {
    int e = 0;
    double m = std::frexp(x, &e);
    auto mi = int64_t(std::ldexp(m, 53));
    e -= 53;
    Rational r(mi);
    if (e >= 0) r *= Rational(BigInt(1) << e);
    else r /= Rational(BigInt(1) << -e);
    return r;
}

} // namespace detail

/// Exact correlation survey: i_rms_sq = (1/(N(N-1))) Sum_{i != j} |<v_i|v_j>|^2
/// and i_max_sq over all pairs, against
///   welch_rms_sq = welch_max_sq = (N-K)/((N-1)K)
///   levenstein_sq = (2N-K^2-K)/((K+1)(N-K))   (only when N > K^2).
/// Symbolic sets are reduced in Z[w] across `threads` workers with a
/// worker-count-independent fold; sets with Dense vectors take a sequential
/// floating path (1e-9 comparison tolerance).
inline CorrelationReport correlation_report(const SignalSet& S,
                                            unsigned threads = 1) {
    const uint64_t N = S.N(), K = S.K;
    if (N < 2) throw DegenerateSet("need at least two signals, got " +
                                   std::to_string(N));
    if (K == 0) throw DegenerateSet("ambient dimension is zero");
    for (const auto& v : S.vectors) {
        if (v.kind == SignalVector::Kind::StandardBasis && v.unit >= K)
            throw DegenerateSet("standard-basis index out of range");
        if (v.kind == SignalVector::Kind::Exponent &&
            (v.exps.size() != K || S.p < 2))
            throw DegenerateSet("exponent vector does not match the set");
        if (v.kind == SignalVector::Kind::Dense && v.entries.size() != K)
            throw DegenerateSet("dense vector does not match the set");
    }

    CorrelationReport rep;
    rep.N = N;
    rep.K = K;
    const BigInt bigN(N), bigK(K);

    rep.welch_rms_sq = Rational(bigN - bigK, (bigN - 1) * bigK);
    if (rep.welch_rms_sq < 0) rep.welch_rms_sq = 0; // N < K: bound is vacuous
    rep.welch_max_sq = rep.welch_rms_sq;
    rep.levenstein_applicable = bigN > bigK * bigK;
    if (rep.levenstein_applicable)
        rep.levenstein_sq =
            Rational(2 * bigN - bigK * bigK - bigK, (bigK + 1) * (bigN - bigK));

    if (S.all_exact()) {
        struct Acc {
            BigInt sum{0}, best{-1};
            std::pair<uint64_t, uint64_t> witness{0, 0};
        };
        Acc folded = chunked_reduce(
            N, threads, Acc{},
            [&](uint64_t lo, uint64_t hi, Acc& acc) {
                for (uint64_t i = lo; i < hi; ++i)
                    for (uint64_t j = i + 1; j < N; ++j) {
                        BigInt n = detail::pair_numerator_sq(S, i, j);
                        acc.sum += n;
                        if (n > acc.best) {
                            acc.best = n;
                            acc.witness = {i, j};
                        }
                    }
            },
            [](Acc& total, const Acc& local) {
                total.sum += local.sum;
                if (local.best > total.best) { // ties keep the earlier chunk
                    total.best = local.best;
                    total.witness = local.witness;
                }
            });
        rep.i_rms_sq = Rational(2 * folded.sum, bigN * (bigN - 1) * bigK * bigK);
        rep.i_max_sq = Rational(folded.best, bigK * bigK);
        rep.max_witness = folded.witness;
        rep.meets_welch_rms = rep.i_rms_sq == rep.welch_rms_sq;
        rep.meets_welch_max = rep.i_max_sq == rep.welch_max_sq;
        rep.meets_levenstein =
            rep.levenstein_applicable && rep.i_max_sq == rep.levenstein_sq;
        return rep;
    }

    rep.exact = false;
    std::vector<std::vector<std::complex<double>>> dense;
    dense.reserve(N);
    for (const auto& v : S.vectors) {
        dense.push_back(detail::densify(S, v));
        double nrm = 0;
        for (auto c : dense.back()) nrm += std::norm(c);
        if (std::abs(nrm - 1.0) > 1e-9)
            throw DegenerateSet("signal " + std::to_string(dense.size() - 1) +
                                " is not unit norm");
    }
    double sum = 0, best = -1;
    for (uint64_t i = 0; i < N; ++i)
        for (uint64_t j = i + 1; j < N; ++j) {
            std::complex<double> ip = 0;
            for (uint64_t x = 0; x < K; ++x)
                ip += std::conj(dense[i][x]) * dense[j][x];
            double m = std::norm(ip);
            sum += m;
            if (m > best) {
                best = m;
                rep.max_witness = {i, j};
            }
        }
    rep.i_rms_sq = detail::rational_from_double(2 * sum / (double(N) * (N - 1)));
    rep.i_max_sq = detail::rational_from_double(best);
    const Rational tol(1, 1000000000);
    auto close = [&](const Rational& a, const Rational& b) {
        return abs(a - b) <= tol;
    };
    rep.meets_welch_rms = close(rep.i_rms_sq, rep.welch_rms_sq);
    rep.meets_welch_max = close(rep.i_max_sq, rep.welch_max_sq);
    rep.meets_levenstein =
        rep.levenstein_applicable && close(rep.i_max_sq, rep.levenstein_sq);
    return rep;
}

} // namespace alltoplab
