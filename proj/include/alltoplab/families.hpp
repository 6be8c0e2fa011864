#pragma once

#include "alltoplab/analysis.hpp"

namespace alltoplab {

/// x^2, planar over every odd characteristic.
inline PolyFn quadratic_planar(const Field& field) {
    return PolyFn::monomial(field, 1, 2);
}

/// x^3, the classical Alltop function; needs p >= 5.
inline PolyFn cubic_alltop(const Field& field) {
    if (field->p() < 5)
        throw CharacteristicTooSmall("x^3 is Alltop only for characteristic >= 5, field is " +
                                     field->describe());
    return PolyFn::monomial(field, 1, 3);
}

namespace detail {

inline uint64_t half_power(const Field& field) {
    if (field->r() % 2 != 0)
        throw Error("construction lives on F_{p^{2r}}; got odd degree field " +
                    field->describe());
    uint64_t ph = 1;
    for (uint32_t i = 0; i < field->r() / 2; ++i) ph *= field->p();
    return ph; // p^r where the field is F_{p^{2r}}
}

} // namespace detail

/// x^(p^r + 2) over F_{p^{2r}}, Alltop exactly when 3 does not divide
/// p^r + 1; the divisibility is checked up front and violations are
/// rejected rather than silently producing a non-Alltop function.
inline PolyFn new_alltop(const Field& field) {
    if (field->p() < 5)
        throw CharacteristicTooSmall("the family x^(p^r+2) needs characteristic >= 5");
    uint64_t ph = detail::half_power(field);
    if ((ph + 1) % 3 == 0)
        throw ConditionViolated("3 divides p^r + 1 = " + std::to_string(ph + 1) +
                                "; x^(p^r+2) is not Alltop on " + field->describe());
    return PolyFn::monomial(field, 1, ph + 2);
}

/// Convenience overload: build F_{p^{2r}} with the default modulus.
inline PolyFn new_alltop(uint32_t p, uint32_t r) {
    if (p < 5)
        throw CharacteristicTooSmall("the family x^(p^r+2) needs characteristic >= 5");
    uint64_t ph = 1;
    for (uint32_t i = 0; i < r; ++i) ph *= p;
    if ((ph + 1) % 3 == 0)
        throw ConditionViolated("3 divides p^r + 1 = " + std::to_string(ph + 1) +
                                "; x^(p^r+2) is not Alltop on F_" + std::to_string(p) +
                                "^" + std::to_string(2 * r));
    return new_alltop(FieldSpec::make(p, 2 * r));
}

/// Pi_a(x) = 2a x^(p^r+1) + a^(p^r) x^2 over F_{p^{2r}} — the planar
/// function the difference of x^(p^r+2) in direction a reduces to, up to an
/// affine part.
inline PolyFn pi_a(const Field& field, ElemIndex a) {
    if (a == 0) throw ZeroParameter("Pi_a needs a != 0");
    uint64_t ph = detail::half_power(field);
    PolyFn out(field);
    out.add_term(ph + 1, field->mul(2 % field->p(), a));
    out.add_term(2, field->pow(a, ph));
    return out;
}

/// The quadratic-equivalence identity behind Pi_a: with gamma^2 = -3,
/// lambda = (1+gamma)/2 and mu = (-1+gamma)/2,
///
///   a^(p^r) Pi_a(x) + mu a Pi_a(x)^(p^r)  =  (a^(p^r) x + lambda a x^(p^r))^2
///
/// for all x. Both square roots of -3 are tried; true when either satisfies
/// the identity everywhere. (-3 is always a square here: the field contains
/// F_{p^2}, so every prime-field element is a square.)
inline bool verify_note_identity(const Field& field, ElemIndex a) {
    if (a == 0) throw ZeroParameter("the identity needs a != 0");
    uint64_t ph = detail::half_power(field);
    const auto& F = *field;
    auto roots = F.sqrt(F.neg(3 % F.p()));
    if (!roots) return false;
    PolyFn pi = pi_a(field, a);
    ElemIndex a_ph = F.pow(a, ph);
    ElemIndex half = F.inv(2 % F.p());
    for (ElemIndex gamma : {roots->first, roots->second}) {
        ElemIndex lambda = F.mul(F.add(1, gamma), half);
        ElemIndex mu = F.mul(F.sub(gamma, 1), half);
        bool all = true;
        for (ElemIndex x = 0; x < F.q() && all; ++x) {
            ElemIndex px = pi.evaluate(x);
            ElemIndex lhs =
                F.add(F.mul(a_ph, px), F.mul(mu, F.mul(a, F.pow(px, ph))));
            ElemIndex root =
                F.add(F.mul(a_ph, x), F.mul(lambda, F.mul(a, F.pow(x, ph))));
            all = lhs == F.mul(root, root);
        }
        if (all) return true;
        if (roots->first == roots->second) break;
    }
    return false;
}

} // namespace alltoplab
