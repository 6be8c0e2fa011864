#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alltoplab/analysis.hpp"
#include "alltoplab/cyclotomic.hpp"
#include "alltoplab/parallel.hpp"

namespace alltoplab {

/// A unit vector of C^q in exponent form: the vector is
/// (1/sqrt(q)) * (w^(exps[0]), ..., w^(exps[q-1])) with w = e^(2*pi*i/p).
/// The 1/sqrt(q) scale is implicit in the type; all algebra below works on
/// q-scaled inner products so everything stays in Z[w].
struct ExponentVector {
    uint32_t p = 0;
    ElemIndex a = 0, b = 0; // construction labels
    std::vector<uint8_t> exps;
};

/// q vectors sharing one a-label. The standard basis E is symbolic: its
/// vectors (0,...,1,...,0) have no exponent form, so `vectors` stays empty
/// and membership checks treat it by definition.
struct Basis {
    enum class Kind { Standard, Planar, Alltop };
    Kind kind = Kind::Standard;
    ElemIndex a = 0;
    std::vector<ExponentVector> vectors;
};

/// q+1 bases: E first, then one per a in element-index order.
struct MUBCollection {
    Field field;
    Basis::Kind construction = Basis::Kind::Planar;
    PolyFn fn;
    std::vector<Basis> bases;

    uint32_t q() const { return field->q(); }
};

namespace detail {

inline CycInt scaled_inner(uint32_t p, const std::vector<uint8_t>& u,
                           const std::vector<uint8_t>& v) {
    std::vector<int64_t> counts(p, 0);
    for (size_t x = 0; x < u.size(); ++x)
        ++counts[(u[x] + p - v[x]) % p];
    return from_exponent_counts(counts, p);
}

} // namespace detail

/// q * <u|v> = Sum_x w^(u.exps[x] - v.exps[x]), exact. Swapping the
/// arguments conjugates the result.
inline CycInt inner_product_scaled(const ExponentVector& u, const ExponentVector& v) {
    if (u.p != v.p || u.exps.size() != v.exps.size())
        throw FieldMismatch("exponent vectors from different constructions");
    return detail::scaled_inner(u.p, u.exps, v.exps);
}

namespace detail {

inline MUBCollection build_mubs(const PolyFn& fn, Basis::Kind kind) {
    const auto& F = *fn.field();
    const ElemIndex q = F.q();
    const uint32_t p = F.p();
    MUBCollection M{fn.field(), kind, fn, {}};
    M.bases.reserve(q + 1);
    M.bases.push_back(Basis{Basis::Kind::Standard, 0, {}});
    FnTable T = fn.tabulate();
    for (ElemIndex a = 0; a < q; ++a) {
        Basis B{kind, a, {}};
        B.vectors.reserve(q);
        // Per-a precomputation: planar uses f(x) directly, Alltop shifts the
        // argument, so tabulate f(x+a) and remember x+a for the linear term.
        std::vector<ElemIndex> shifted(q), fval(q);
        for (ElemIndex x = 0; x < q; ++x) {
            shifted[x] = kind == Basis::Kind::Planar ? x : F.add(x, a);
            fval[x] = kind == Basis::Kind::Planar ? F.mul(a, T[x]) : T[shifted[x]];
        }
        for (ElemIndex b = 0; b < q; ++b) {
            ExponentVector v{p, a, b, std::vector<uint8_t>(q)};
            for (ElemIndex x = 0; x < q; ++x)
                v.exps[x] = uint8_t(F.trace(F.add(fval[x], F.mul(b, shifted[x]))));
            B.vectors.push_back(std::move(v));
        }
        M.bases.push_back(std::move(B));
    }
    return M;
}

} // namespace detail

/// The planar MUB construction: basis a, vector b has exponent
/// tr(a*Pi(x) + b*x) at position x. Rejects non-planar input.
inline MUBCollection build_planar_mubs(const PolyFn& pi, unsigned threads = 1) {
    if (auto fail = planar_failure(pi, threads))
        throw NotPlanar(render_poly(pi) + " is not planar over " +
                        pi.field()->describe());
    return detail::build_mubs(pi, Basis::Kind::Planar);
}

/// The Alltop MUB construction: basis a, vector b has exponent
/// tr(A(x+a) + b*(x+a)) at position x. Rejects non-Alltop input.
inline MUBCollection build_alltop_mubs(const PolyFn& A, unsigned threads = 1) {
    if (A.field()->p() < 5)
        throw CharacteristicTooSmall("Alltop MUBs need characteristic >= 5");
    if (auto fail = alltop_failure(A, threads))
        throw NotAlltop(render_poly(A) + " is not Alltop over " +
                        A.field()->describe());
    return detail::build_mubs(A, Basis::Kind::Alltop);
}

/// Location of the first failed check inside a collection.
struct MubFailure {
    size_t basis_u = 0, basis_v = 0;
    ElemIndex u = 0, v = 0;
    std::string reason;
};

/// Outcome of exact verification. Pairs involving the standard basis are
/// exact by construction — every exponent-vector component has squared
/// magnitude 1/q — and are counted as reported rather than recomputed.
struct MubVerification {
    bool pass = true;
    uint64_t diagonals_checked = 0;
    uint64_t intra_checked = 0;          // off-diagonal same-basis pairs
    uint64_t cross_checked = 0;          // cross-basis (u,v) pairs
    uint64_t standard_reported = 0;      // pairs involving E
    bool sampled = false;                // true when cross pairs were strided
    std::optional<MubFailure> failure;

    void fail(MubFailure f) {
        if (pass) failure = std::move(f);
        pass = false;
    }
};

/// Exact verification: per basis, scaled inner products are q on the
/// diagonal and 0 off it; across bases, their norm squared is q. When
/// `max_cross_pairs` is nonzero and the cross-pair space is larger, a
/// deterministic stride sample of at least that many pairs is checked
/// instead (intra checks always run in full).
inline MubVerification verify_mub_collection(const MUBCollection& M,
                                             uint64_t max_cross_pairs = 0,
                                             unsigned threads = 1) {
    MubVerification rep;
    const uint32_t q = M.q();
    const BigInt bq(q);

    std::vector<const Basis*> expo; // the non-standard bases, in order
    for (const auto& B : M.bases)
        if (B.kind != Basis::Kind::Standard) expo.push_back(&B);
    const uint64_t n_std = M.bases.size() - expo.size(); // 0 or 1

    // Standard-basis pairs are unbiased/orthonormal by construction.
    rep.standard_reported =
        n_std * (uint64_t(q) * (q - 1) / 2 + expo.size() * uint64_t(q) * q);

    // Intra-basis checks, exhaustive.
    for (size_t i = 0; i < expo.size() && rep.pass; ++i) {
        const auto& vecs = expo[i]->vectors;
        for (ElemIndex u = 0; u < q && rep.pass; ++u) {
            auto diag = inner_product_scaled(vecs[u], vecs[u]);
            ++rep.diagonals_checked;
            if (diag != CycInt::integer(M.field->p(), bq))
                rep.fail({i + 1, i + 1, u, u, "diagonal scaled product != q"});
            for (ElemIndex v = u + 1; v < q && rep.pass; ++v) {
                ++rep.intra_checked;
                if (!inner_product_scaled(vecs[u], vecs[v]).is_zero())
                    rep.fail({i + 1, i + 1, u, v,
                              "same-basis vectors not orthogonal"});
            }
        }
    }
    if (!rep.pass) return rep;

    // Cross-basis checks: all pairs, or a deterministic stride sample.
    std::vector<std::pair<size_t, size_t>> basis_pairs;
    for (size_t i = 0; i < expo.size(); ++i)
        for (size_t j = i + 1; j < expo.size(); ++j) basis_pairs.emplace_back(i, j);
    const uint64_t block = uint64_t(q) * q;
    const uint64_t total = basis_pairs.size() * block;
    uint64_t stride = 1;
    if (max_cross_pairs != 0 && total > max_cross_pairs) {
        stride = total / max_cross_pairs;
        rep.sampled = true;
    }

    struct Chunk {
        uint64_t checked = 0;
        std::optional<std::pair<uint64_t, MubFailure>> first_bad;
    };
    const uint64_t n_samples = (total + stride - 1) / stride;
    Chunk folded = chunked_reduce(
        n_samples, threads, Chunk{},
        [&](uint64_t lo, uint64_t hi, Chunk& acc) {
            for (uint64_t s = lo; s < hi; ++s) {
                if (acc.first_bad) return; // later indices can't improve it
                uint64_t k = s * stride;
                const auto [i, j] = basis_pairs[k / block];
                ElemIndex u = ElemIndex(k % block / q), v = ElemIndex(k % q);
                auto ips = inner_product_scaled(expo[i]->vectors[u],
                                                expo[j]->vectors[v]);
                ++acc.checked;
                if (norm_sq(ips).as_integer() != std::optional<BigInt>(bq))
                    acc.first_bad = {{k, MubFailure{i + 1, j + 1, u, v,
                                                    "cross-basis |q<u|v>|^2 != q"}}};
            }
        },
        [](Chunk& into, Chunk& from) {
            into.checked += from.checked;
            if (from.first_bad &&
                (!into.first_bad || from.first_bad->first < into.first_bad->first))
                into.first_bad = std::move(from.first_bad);
        });
    rep.cross_checked = folded.checked;
    if (folded.first_bad) {
        // Pin the count to the failing index so reports are identical no
        // matter how many workers ran.
        rep.cross_checked = folded.first_bad->first / stride + 1;
        rep.fail(std::move(folded.first_bad->second));
    }
    return rep;
}

} // namespace alltoplab
