#pragma once

#include <optional>
#include <set>

#include "alltoplab/parallel.hpp"
#include "alltoplab/poly.hpp"

namespace alltoplab {

/// True iff all q table entries are pairwise distinct.
inline bool is_bijection(const FnTable& t) {
    std::vector<uint8_t> seen(t.size(), 0);
    for (ElemIndex v : t) {
        if (v >= t.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

/// Why a function is not planar. DeltaCollision: Delta_{f,a}(x) =
/// Delta_{f,a}(y) with x != y. DformZero (Dembowski-Ostrom shortcut path):
/// D_f(x,y) = 0 with x,y != 0; the a field is unused there.
struct PlanarFailure {
    enum class Kind { DeltaCollision, DformZero };
    Kind kind;
    ElemIndex a, x, y;
};

/// Why a function is not Alltop: the difference function in direction a is
/// not planar, for the stated inner reason.
struct AlltopFailure {
    ElemIndex a;
    PlanarFailure inner;
};

namespace detail {

// First repeated value of x -> T[x+a] - T[x], scanning x upward: the pair
// (prior x, current x) at the first repeat, or nullopt if bijective.
inline std::optional<std::pair<ElemIndex, ElemIndex>>
delta_collision(const FieldSpec& F, const FnTable& T, ElemIndex a) {
    const ElemIndex q = F.q();
    const ElemIndex none = q;
    std::vector<ElemIndex> seen(q, none);
    for (ElemIndex x = 0; x < q; ++x) {
        ElemIndex v = F.sub(T[F.add(x, a)], T[x]);
        if (seen[v] != none) return std::make_pair(seen[v], x);
        seen[v] = x;
    }
    return std::nullopt;
}

// Smallest a >= 1 whose delta direction collides, or 0 when T is planar.
inline ElemIndex first_nonplanar_direction(const FieldSpec& F, const FnTable& T,
                                           unsigned threads) {
    uint64_t hit = find_first(F.q() - 1, threads, [&](uint64_t i) {
        return delta_collision(F, T, ElemIndex(i + 1)).has_value();
    });
    return hit == F.q() - 1 ? 0 : ElemIndex(hit + 1);
}

} // namespace detail

/// Exponent shapes are syntactic tests on the reduced form.

/// Every exponent is a power of p (a linearized polynomial); equivalent to
/// L(x+y) = L(x) + L(y) for all x,y.
inline bool is_additive(const PolyFn& f) {
    const uint32_t p = f.field()->p(), r = f.field()->r();
    std::set<uint32_t> powers;
    uint32_t pk = 1;
    for (uint32_t k = 0; k < r; ++k) { powers.insert(pk); pk *= p; }
    for (const auto& [e, c] : f.terms())
        if (!powers.count(e)) return false;
    return true;
}

/// Additive plus possibly a constant term.
inline bool is_affine(const PolyFn& f) {
    PolyFn linear = f;
    linear.add_term(0, f.field()->neg(f.evaluate(0)));
    return is_additive(linear);
}

/// Every exponent has the form p^i + p^j (a Dembowski-Ostrom polynomial).
inline bool is_do_shape(const PolyFn& f) {
    const uint32_t p = f.field()->p(), r = f.field()->r();
    std::set<uint32_t> shapes;
    uint32_t pi = 1;
    for (uint32_t i = 0; i < r; ++i, pi *= p) {
        uint32_t pj = pi;
        for (uint32_t j = i; j < r; ++j, pj *= p) shapes.insert(pi + pj);
    }
    for (const auto& [e, c] : f.terms())
        if (!shapes.count(e)) return false;
    return true;
}

/// An additive L permutes F_q iff it has no nonzero root.
inline bool is_additive_permutation(const PolyFn& L) {
    if (!is_additive(L))
        throw NotAdditive("is_additive_permutation needs a linearized polynomial, got " +
                          render_poly(L));
    for (ElemIndex x = 1; x < L.field()->q(); ++x)
        if (L.evaluate(x) == 0) return false;
    return true;
}

/// First planarity counterexample of f, or nullopt when f is planar.
///
/// Dembowski-Ostrom polynomials take the D_f(x,y) != 0 shortcut (planarity
/// is equivalent for them and the witness is a zero of the symmetric form);
/// everything else runs the definitional delta-bijection sweep. Both paths
/// scan deterministically, so the witness does not depend on `threads`.
inline std::optional<PlanarFailure> planar_failure(const PolyFn& f,
                                                   unsigned threads = 1) {
    const auto& F = *f.field();
    const ElemIndex q = F.q();
    FnTable T = f.tabulate();
    if (is_do_shape(f)) {
        // D_f(x,y) = T[x+y] - T[x] - T[y]; symmetric, so scan x <= y.
        uint64_t hit = find_first(q - 1, threads, [&](uint64_t i) {
            ElemIndex x = ElemIndex(i + 1);
            for (ElemIndex y = x; y < q; ++y)
                if (F.sub(F.sub(T[F.add(x, y)], T[x]), T[y]) == 0) return true;
            return false;
        });
        if (hit == q - 1) return std::nullopt;
        ElemIndex x = ElemIndex(hit + 1);
        for (ElemIndex y = x; y < q; ++y)
            if (F.sub(F.sub(T[F.add(x, y)], T[x]), T[y]) == 0)
                return PlanarFailure{PlanarFailure::Kind::DformZero, 0, x, y};
    }
    ElemIndex a = detail::first_nonplanar_direction(F, T, threads);
    if (a == 0) return std::nullopt;
    auto pair = detail::delta_collision(F, T, a);
    return PlanarFailure{PlanarFailure::Kind::DeltaCollision, a, pair->first,
                         pair->second};
}

inline bool is_planar(const PolyFn& f, unsigned threads = 1) {
    return !planar_failure(f, threads).has_value();
}

/// First Alltop counterexample of f — a direction a whose difference
/// function is not planar — or nullopt when f is Alltop. Throws for p < 5:
/// no Alltop functions exist there.
inline std::optional<AlltopFailure> alltop_failure(const PolyFn& f,
                                                   unsigned threads = 1) {
    const auto& F = *f.field();
    if (F.p() < 5)
        throw CharacteristicTooSmall("Alltop functions need characteristic >= 5, field is " +
                                     F.describe());
    const ElemIndex q = F.q();
    FnTable T = f.tabulate();
    auto delta_table = [&](ElemIndex a) {
        FnTable D(q);
        for (ElemIndex x = 0; x < q; ++x) D[x] = F.sub(T[F.add(x, a)], T[x]);
        return D;
    };
    uint64_t hit = find_first(q - 1, threads, [&](uint64_t i) {
        FnTable D = delta_table(ElemIndex(i + 1));
        return detail::first_nonplanar_direction(F, D, 1) != 0;
    });
    if (hit == q - 1) return std::nullopt;
    ElemIndex a = ElemIndex(hit + 1);
    FnTable D = delta_table(a);
    ElemIndex b = detail::first_nonplanar_direction(F, D, 1);
    auto pair = detail::delta_collision(F, D, b);
    return AlltopFailure{
        a, PlanarFailure{PlanarFailure::Kind::DeltaCollision, b, pair->first,
                         pair->second}};
}

inline bool is_alltop(const PolyFn& f, unsigned threads = 1) {
    return !alltop_failure(f, threads).has_value();
}

/// One-sided EA-inequivalence test against x^3: sound when it answers
/// InequivalentToCube, silent otherwise.
enum class EaCube { InequivalentToCube, Inconclusive };

/// A term survives when its exponent is p^k + p^j + p^i with the three
/// indices not all equal — i.e. base-p digits summing to 3 with no digit 3.
/// If every term survives, no EA move can turn the function into x^3.
inline EaCube ea_inequiv_to_cube(const PolyFn& f) {
    const uint32_t p = f.field()->p();
    for (const auto& [e, c] : f.terms()) {
        uint32_t digit_sum = 0, max_digit = 0, rest = e;
        while (rest) {
            uint32_t d = rest % p;
            digit_sum += d;
            max_digit = std::max(max_digit, d);
            rest /= p;
        }
        if (digit_sum != 3 || max_digit > 2) return EaCube::Inconclusive;
    }
    return EaCube::InequivalentToCube;
}

} // namespace alltoplab
