#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alltoplab/analysis.hpp"
#include "alltoplab/parallel.hpp"

namespace alltoplab {

enum class SearchProperty { Planar, Alltop };

/// Exhaustively tests the monomials x^d, d_min <= d <= d_max, and returns
/// the passing exponents in ascending order. The scan fans out across
/// `threads` workers by degree; per-chunk hit lists are concatenated in
/// chunk order, so the inventory is identical for every worker count.
inline std::vector<uint32_t> search_monomials(const Field& F,
                                              SearchProperty prop,
                                              uint32_t d_min, uint32_t d_max,
                                              unsigned threads = 1) {
    const uint32_t q = F->q();
    if (d_min < 2 || d_min > d_max || d_max + 1 >= q)
        throw Error("degree range [" + std::to_string(d_min) + ", " +
                    std::to_string(d_max) + "] must satisfy 2 <= d_min <= d_max < " +
                    std::to_string(q) + " - 1");
    // Surface the characteristic restriction here: workers must not throw.
    if (prop == SearchProperty::Alltop && F->p() < 5)
        throw CharacteristicTooSmall(
            "Alltop functions need characteristic at least 5, got p = " +
            std::to_string(F->p()));

    using Hits = std::vector<uint32_t>;
    return chunked_reduce(
        uint64_t(d_max) - d_min + 1, threads, Hits{},
        [&](uint64_t lo, uint64_t hi, Hits& acc) {
            for (uint64_t i = lo; i < hi; ++i) {
                const auto d = uint32_t(d_min + i);
                PolyFn f = PolyFn::monomial(F, 1, d);
                const bool pass =
                    prop == SearchProperty::Planar ? is_planar(f) : is_alltop(f);
                if (pass) acc.push_back(d);
            }
        },
        [](Hits& total, const Hits& local) {
            total.insert(total.end(), local.begin(), local.end());
        });
}

/// c1*x^e1 + c2*x^e2 with d_min <= e1 < e2 <= d_max and c1, c2 nonzero.
struct BinomialHit {
    uint32_t e1 = 0, e2 = 0;
    ElemIndex c1 = 0, c2 = 0;

    bool operator==(const BinomialHit&) const = default;
};

/// How many candidates a binomial search over the range would test:
/// C(range, 2) * (q-1)^2. Meant to be shown to the user before committing.
inline uint64_t binomial_candidate_count(const Field& F, uint32_t d_min,
                                         uint32_t d_max) {
    if (d_min > d_max) return 0;
    const uint64_t n = uint64_t(d_max) - d_min + 1;
    const uint64_t c = F->q() - 1;
    return n * (n - 1) / 2 * c * c;
}

/// The binomial analogue of search_monomials. Hits come back ascending by
/// (e1, e2, c1, c2); the exponent range keeps candidates in reduced form, so
/// no two candidates describe the same function.
inline std::vector<BinomialHit> search_binomials(const Field& F,
                                                 SearchProperty prop,
                                                 uint32_t d_min, uint32_t d_max,
                                                 unsigned threads = 1) {
    const uint32_t q = F->q();
    if (d_min < 2 || d_min > d_max || d_max + 1 >= q)
        throw Error("degree range [" + std::to_string(d_min) + ", " +
                    std::to_string(d_max) + "] must satisfy 2 <= d_min <= d_max < " +
                    std::to_string(q) + " - 1");
    if (prop == SearchProperty::Alltop && F->p() < 5)
        throw CharacteristicTooSmall(
            "Alltop functions need characteristic at least 5, got p = " +
            std::to_string(F->p()));

    using Hits = std::vector<BinomialHit>;
    return chunked_reduce(
        uint64_t(d_max) - d_min + 1, threads, Hits{},
        [&](uint64_t lo, uint64_t hi, Hits& acc) {
            for (uint64_t i = lo; i < hi; ++i) {
                const auto e1 = uint32_t(d_min + i);
                for (uint32_t e2 = e1 + 1; e2 <= d_max; ++e2)
                    for (ElemIndex c1 = 1; c1 < q; ++c1)
                        for (ElemIndex c2 = 1; c2 < q; ++c2) {
                            PolyFn f = PolyFn::monomial(F, c1, e1) +
                                       PolyFn::monomial(F, c2, e2);
                            const bool pass = prop == SearchProperty::Planar
                                                  ? is_planar(f)
                                                  : is_alltop(f);
                            if (pass) acc.push_back({e1, e2, c1, c2});
                        }
            }
        },
        [](Hits& total, const Hits& local) {
            total.insert(total.end(), local.begin(), local.end());
        });
}

} // namespace alltoplab
