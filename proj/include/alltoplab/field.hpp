#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alltoplab/errors.hpp"

namespace alltoplab {

/// Elements of F_q are identified with integers in [0, q): an element with
/// polynomial-basis coordinates (c_0, ..., c_{r-1}) over Z_p has index
/// sum c_i * p^i. Index 0 is zero, index 1 is one, and the first p indices
/// are the prime subfield.
using ElemIndex = uint32_t;

namespace detail {

// Dense Z_p[x] arithmetic on coefficient vectors (lowest degree first),
// just enough to reduce products modulo the field polynomial and to test
// irreducibility. Not exposed; FieldSpec is the public surface.

inline void trim(std::vector<uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<uint32_t> pmul(const std::vector<uint32_t>& a,
                                  const std::vector<uint32_t>& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            acc[i + j] += uint64_t(a[i]) * b[j];
    std::vector<uint32_t> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) out[i] = uint32_t(acc[i] % p);
    trim(out);
    return out;
}

// In-place remainder of a modulo monic m.
inline void pmod(std::vector<uint32_t>& a, const std::vector<uint32_t>& m, uint32_t p) {
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint32_t lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (size_t i = 0; i < dm; ++i) {
                uint64_t v = a[shift + i] + uint64_t(lead) * (p - m[i]);
                a[shift + i] = uint32_t(v % p);
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() <= dm) break;
    }
    trim(a);
}

inline std::vector<uint32_t> pmulmod(const std::vector<uint32_t>& a,
                                     const std::vector<uint32_t>& b,
                                     const std::vector<uint32_t>& m, uint32_t p) {
    auto c = pmul(a, b, p);
    pmod(c, m, p);
    return c;
}

inline std::vector<uint32_t> ppowmod(std::vector<uint32_t> base, uint64_t e,
                                     const std::vector<uint32_t>& m, uint32_t p) {
    std::vector<uint32_t> acc{1};
    pmod(base, m, p);
    while (e) {
        if (e & 1) acc = pmulmod(acc, base, m, p);
        base = pmulmod(base, base, m, p);
        e >>= 1;
    }
    return acc;
}

inline std::vector<uint32_t> pgcd(std::vector<uint32_t> a, std::vector<uint32_t> b,
                                  uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // Make b monic so pmod applies.
        uint32_t lead = b.back(), inv = 1;
        for (uint32_t k = 1; k < p; ++k)
            if (k * uint64_t(lead) % p == 1) { inv = k; break; }
        for (auto& c : b) c = uint32_t(uint64_t(c) * inv % p);
        pmod(a, b, p);
        std::swap(a, b);
    }
    return a;
}

inline bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducibility of a monic degree-r polynomial over Z_p. Degree <= 3 only
// needs a root scan (any factorization includes a linear factor); higher
// degrees use the x^(p^k) - x distinct-degree criterion.
inline bool is_irreducible(const std::vector<uint32_t>& m, uint32_t p) {
    const size_t r = m.size() - 1;
    if (r == 0) return false;
    if (r <= 3) {
        bool has_root = false;
        for (uint32_t c = 0; c < p && !has_root; ++c) {
            uint64_t v = 0;
            for (size_t i = m.size(); i-- > 0;) v = (v * c + m[i]) % p;
            has_root = (v == 0);
        }
        if (r == 1) return true;
        return !has_root;
    }
    std::vector<uint32_t> x{0, 1};
    // x^(p^r) must reduce to x ...
    std::vector<uint32_t> t = x;
    for (size_t k = 0; k < r; ++k) t = ppowmod(t, p, m, p);
    if (t != x) return false;
    // ... and x^(p^(r/s)) - x must be coprime to m for every prime s | r.
    size_t rr = r;
    for (size_t s = 2; s <= rr; ++s) {
        if (rr % s != 0) continue;
        while (rr % s == 0) rr /= s;
        std::vector<uint32_t> u = x;
        for (size_t k = 0; k < r / s; ++k) u = ppowmod(u, p, m, p);
        // u - x mod p
        std::vector<uint32_t> diff = u;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        auto g = pgcd(diff, m, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace detail

/// An instance of F_{p^r}: odd prime p, degree r >= 1, and a monic
/// irreducible modulus polynomial over Z_p fixing the polynomial basis.
/// Construction validates everything; instances are immutable afterwards and
/// safe to share across threads. All arithmetic works on element indices.
class FieldSpec {
public:
    /// Build F_{p^r} with the built-in default modulus (available for
    /// p in {5,7,11,13}, r in {1,2,3,4}; other sizes need an explicit one).
    static std::shared_ptr<const FieldSpec> make(uint32_t p, uint32_t r);

    /// Build F_{p^r} with an explicit modulus, coefficients lowest-first,
    /// length r+1, monic, irreducible over Z_p.
    static std::shared_ptr<const FieldSpec> make(uint32_t p, uint32_t r,
                                                 std::vector<uint32_t> modulus);

    uint32_t p() const { return p_; }
    uint32_t r() const { return r_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    /// Polynomial-basis coordinates of an index (length r, lowest first).
    std::vector<uint32_t> coeffs(ElemIndex x) const {
        std::vector<uint32_t> c(r_);
        for (uint32_t i = 0; i < r_; ++i) { c[i] = x % p_; x /= p_; }
        return c;
    }

    /// Index of a coordinate vector; entries are reduced mod p, and the
    /// vector may be shorter or longer than r as long as the tail is zero.
    ElemIndex from_coeffs(const std::vector<uint32_t>& c) const {
        for (size_t i = r_; i < c.size(); ++i)
            if (c[i] % p_ != 0)
                throw Error("coefficient vector has degree >= r");
        ElemIndex x = 0;
        for (size_t i = std::min<size_t>(c.size(), r_); i-- > 0;)
            x = x * p_ + c[i] % p_;
        return x;
    }

    ElemIndex add(ElemIndex a, ElemIndex b) const {
        if (!add_table_.empty()) return add_table_[size_t(a) * q_ + b];
        return add_slow(a, b);
    }
    ElemIndex neg(ElemIndex a) const {
        if (!neg_table_.empty()) return neg_table_[a];
        return neg_slow(a);
    }
    ElemIndex sub(ElemIndex a, ElemIndex b) const { return add(a, neg(b)); }
    ElemIndex mul(ElemIndex a, ElemIndex b) const {
        if (!mul_table_.empty()) return mul_table_[size_t(a) * q_ + b];
        return mul_slow(a, b);
    }
    ElemIndex inv(ElemIndex a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
        if (!inv_table_.empty()) return inv_table_[a];
        return pow(a, q_ - 2);
    }
    ElemIndex div(ElemIndex a, ElemIndex b) const { return mul(a, inv(b)); }

    /// Square-and-multiply; exponents up to q^2 and beyond are fine.
    ElemIndex pow(ElemIndex a, uint64_t e) const {
        ElemIndex acc = 1, base = a;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// The Frobenius automorphism x -> x^p.
    ElemIndex frobenius(ElemIndex a) const {
        if (!frob_table_.empty()) return frob_table_[a];
        return pow(a, p_);
    }

    /// Absolute trace tr(x) = x + x^p + ... + x^(p^(r-1)), as an integer
    /// in [0, p).
    uint32_t trace(ElemIndex a) const {
        if (!trace_table_.empty()) return trace_table_[a];
        ElemIndex s = 0, t = a;
        for (uint32_t i = 0; i < r_; ++i) {
            s = add(s, t);
            t = frobenius(t);
        }
        return s; // lies in the prime subfield, whose indices are 0..p-1
    }

    /// Both square roots of c, smaller index first, or nullopt when c is a
    /// non-square. sqrt(0) = {0, 0}. Exhaustive scan; q stays desk-sized.
    std::optional<std::pair<ElemIndex, ElemIndex>> sqrt(ElemIndex c) const {
        for (ElemIndex x = 0; x < q_; ++x)
            if (mul(x, x) == c) return std::make_pair(x, neg(x)); // neg(x) >= x here
        return std::nullopt;
    }

    /// Same field for arithmetic purposes: identical p, r, and modulus.
    bool same_as(const FieldSpec& other) const {
        return this == &other ||
               (p_ == other.p_ && r_ == other.r_ && modulus_ == other.modulus_);
    }

    /// "F_25 = Z_5[x]/(x^2+4x+2)" style description.
    std::string describe() const;

private:
    FieldSpec(uint32_t p, uint32_t r, std::vector<uint32_t> modulus);

    ElemIndex add_slow(ElemIndex a, ElemIndex b) const {
        ElemIndex out = 0, mult = 1;
        for (uint32_t i = 0; i < r_; ++i) {
            out += (a % p_ + b % p_) % p_ * mult;
            a /= p_; b /= p_; mult *= p_;
        }
        return out;
    }
    ElemIndex neg_slow(ElemIndex a) const {
        ElemIndex out = 0, mult = 1;
        for (uint32_t i = 0; i < r_; ++i) {
            out += (p_ - a % p_) % p_ * mult;
            a /= p_; mult *= p_;
        }
        return out;
    }
    ElemIndex mul_slow(ElemIndex a, ElemIndex b) const {
        auto c = detail::pmulmod(trimmed(a), trimmed(b), modulus_, p_);
        c.resize(r_, 0);
        return from_coeffs(c);
    }
    std::vector<uint32_t> trimmed(ElemIndex a) const {
        auto c = coeffs(a);
        detail::trim(c);
        return c;
    }

    uint32_t p_, r_, q_;
    std::vector<uint32_t> modulus_;
    // Lookup tables, built when q is small enough that q^2 entries are cheap.
    std::vector<ElemIndex> add_table_, mul_table_;
    std::vector<ElemIndex> neg_table_, inv_table_, frob_table_;
    std::vector<uint8_t> trace_table_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Default modulus for F_{p^r}, lowest coefficient first: the Conway
/// polynomial C_{p,r}, so subfield embeddings of the covered sizes are
/// norm-compatible and the table matches standard references.
inline std::optional<std::vector<uint32_t>> default_modulus(uint32_t p, uint32_t r) {
    struct Entry { uint32_t p, r; std::vector<uint32_t> m; };
    static const std::vector<Entry> table = {
        {5, 1, {3, 1}},          {5, 2, {2, 4, 1}},
        {5, 3, {3, 3, 0, 1}},    {5, 4, {2, 4, 4, 0, 1}},
        {7, 1, {4, 1}},          {7, 2, {3, 6, 1}},
        {7, 3, {4, 0, 6, 1}},    {7, 4, {3, 4, 5, 0, 1}},
        {11, 1, {9, 1}},         {11, 2, {2, 7, 1}},
        {11, 3, {9, 2, 0, 1}},   {11, 4, {2, 10, 8, 0, 1}},
        {13, 1, {11, 1}},        {13, 2, {2, 12, 1}},
        {13, 3, {11, 2, 0, 1}},  {13, 4, {2, 12, 3, 0, 1}},
    };
    for (const auto& e : table)
        if (e.p == p && e.r == r) return e.m;
    return std::nullopt;
}

inline FieldSpec::FieldSpec(uint32_t p, uint32_t r, std::vector<uint32_t> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
    if (p == 2) throw CharacteristicTwo("planar functions do not exist over F_2^r");
    if (!detail::is_prime(p)) throw Error("characteristic must be prime, got " + std::to_string(p));
    if (r == 0) throw Error("extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > (uint64_t(1) << 16)) throw Error("field order out of supported range");
    }
    q_ = uint32_t(q);
    if (modulus_.size() != size_t(r) + 1)
        throw Error("modulus must have degree exactly r");
    for (auto& c : modulus_) c %= p;
    if (modulus_.back() != 1) throw Error("modulus must be monic");
    if (!detail::is_irreducible(modulus_, p))
        throw Error("modulus is reducible over Z_" + std::to_string(p));

    // Only tabulate when the quadratic tables stay a few megabytes.
    const uint64_t kTableLimit = 2048;
    neg_table_.resize(q_);
    inv_table_.resize(q_);
    frob_table_.resize(q_);
    trace_table_.resize(q_);
    if (q <= kTableLimit) {
        add_table_.resize(size_t(q_) * q_);
        mul_table_.resize(size_t(q_) * q_);
        for (ElemIndex a = 0; a < q_; ++a)
            for (ElemIndex b = a; b < q_; ++b) {
                ElemIndex s = add_slow(a, b), m = mul_slow(a, b);
                add_table_[size_t(a) * q_ + b] = add_table_[size_t(b) * q_ + a] = s;
                mul_table_[size_t(a) * q_ + b] = mul_table_[size_t(b) * q_ + a] = m;
            }
    }
    for (ElemIndex a = 0; a < q_; ++a) neg_table_[a] = neg_slow(a);
    for (ElemIndex a = 0; a < q_; ++a) frob_table_[a] = pow(a, p_);
    for (ElemIndex a = 0; a < q_; ++a) {
        ElemIndex s = 0, t = a;
        for (uint32_t i = 0; i < r_; ++i) {
            s = add(s, t);
            t = frob_table_[t];
        }
        trace_table_[a] = uint8_t(s);
    }
    inv_table_[0] = 0;
    for (ElemIndex a = 1; a < q_; ++a) inv_table_[a] = pow(a, q_ - 2);
}

inline std::shared_ptr<const FieldSpec> FieldSpec::make(uint32_t p, uint32_t r) {
    auto m = default_modulus(p, r);
    if (!m)
        throw Error("no default modulus for p=" + std::to_string(p) +
                    ", r=" + std::to_string(r) + "; supply one explicitly");
    return make(p, r, *m);
}

inline std::shared_ptr<const FieldSpec> FieldSpec::make(uint32_t p, uint32_t r,
                                                        std::vector<uint32_t> modulus) {
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, r, std::move(modulus)));
}

inline std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (r_ > 1) {
        os << " = Z_" << p_ << "[x]/(";
        bool first = true;
        for (size_t i = modulus_.size(); i-- > 0;) {
            if (modulus_[i] == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || modulus_[i] != 1) os << modulus_[i];
            if (i >= 1) {
                if (modulus_[i] != 1) os << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

/// A field element: a spec handle plus an index. Value type with the usual
/// operator algebra; mixing elements of different field instances throws.
class FieldElement {
public:
    FieldElement(Field field, ElemIndex idx) : field_(std::move(field)), idx_(idx) {
        if (idx_ >= field_->q()) throw Error("element index out of range");
    }

    const Field& field() const { return field_; }
    ElemIndex index() const { return idx_; }
    std::vector<uint32_t> coeffs() const { return field_->coeffs(idx_); }
    bool is_zero() const { return idx_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.field_, a.field_->add(a.idx_, b.idx_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.field_, a.field_->sub(a.idx_, b.idx_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.field_, a.field_->mul(a.idx_, b.idx_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.field_, a.field_->div(a.idx_, b.idx_)};
    }
    FieldElement operator-() const { return {field_, field_->neg(idx_)}; }
    FieldElement pow(uint64_t e) const { return {field_, field_->pow(idx_, e)}; }
    FieldElement inv() const { return {field_, field_->inv(idx_)}; }
    FieldElement frobenius() const { return {field_, field_->frobenius(idx_)}; }
    uint32_t trace() const { return field_->trace(idx_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_->same_as(*b.field_) && a.idx_ == b.idx_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }

private:
    void check(const FieldElement& other) const {
        if (!field_->same_as(*other.field_))
            throw FieldMismatch("elements of " + field_->describe() + " and " +
                                other.field_->describe() + " mixed");
    }
    Field field_;
    ElemIndex idx_;
};

/// All q elements in index order (0 first). Handy for "for all x" loops at
/// the element level; hot paths iterate raw indices instead.
inline std::vector<FieldElement> enumerate_elements(const Field& field) {
    std::vector<FieldElement> out;
    out.reserve(field->q());
    for (ElemIndex i = 0; i < field->q(); ++i) out.emplace_back(field, i);
    return out;
}

} // namespace alltoplab
