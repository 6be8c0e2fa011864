#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "alltoplab/field.hpp"

namespace alltoplab {

namespace detail {

// Binomial coefficients modulo p by Lucas' theorem, with factorials over
// [0, p) supplied by the caller so a whole row costs one table.
struct BinomModP {
    explicit BinomModP(uint32_t p) : p_(p), fact_(p), inv_fact_(p) {
        fact_[0] = 1;
        for (uint32_t i = 1; i < p; ++i) fact_[i] = fact_[i - 1] * i % p;
        inv_fact_[p - 1] = pow_mod(fact_[p - 1], p - 2);
        for (uint32_t i = p - 1; i > 0; --i)
            inv_fact_[i - 1] = inv_fact_[i] * i % p;
    }
    uint64_t operator()(uint64_t n, uint64_t k) const {
        if (k > n) return 0;
        uint64_t out = 1;
        while (n || k) {
            uint64_t nd = n % p_, kd = k % p_;
            if (kd > nd) return 0;
            out = out * (fact_[nd] * inv_fact_[kd] % p_) % p_ * inv_fact_[nd - kd] % p_;
            n /= p_;
            k /= p_;
        }
        return out;
    }

private:
    uint64_t pow_mod(uint64_t b, uint64_t e) const {
        uint64_t acc = 1;
        b %= p_;
        while (e) {
            if (e & 1) acc = acc * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return acc;
    }
    uint64_t p_;
    std::vector<uint64_t> fact_, inv_fact_;
};

} // namespace detail

/// A value table: f evaluated at every element, in index order.
using FnTable = std::vector<ElemIndex>;

/// A polynomial function on F_q in reduced sparse form: a map from exponents
/// in [0, q) to nonzero coefficients. Input exponents e >= q are folded by
/// e -> ((e-1) mod (q-1)) + 1, which preserves the function (x^q = x), so
/// two PolyFn values are equal as functions iff they are equal as maps.
class PolyFn {
public:
    explicit PolyFn(Field field) : field_(std::move(field)) {}

    static PolyFn constant(Field field, ElemIndex c) {
        PolyFn f(std::move(field));
        f.add_term(0, c);
        return f;
    }
    static PolyFn monomial(Field field, ElemIndex coeff, uint64_t e) {
        PolyFn f(std::move(field));
        f.add_term(e, coeff);
        return f;
    }
    static PolyFn identity(Field field) { return monomial(std::move(field), 1, 1); }

    const Field& field() const { return field_; }
    const std::map<uint32_t, ElemIndex>& terms() const { return terms_; }
    bool is_zero_fn() const { return terms_.empty(); }

    /// Degree of the reduced form; 0 for constants and the zero function.
    uint32_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    /// Fold an exponent into [0, q) without changing the function.
    uint32_t reduce_exponent(uint64_t e) const {
        uint64_t qm1 = field_->q() - 1;
        if (e == 0) return 0;
        return uint32_t((e - 1) % qm1 + 1);
    }

    /// Add c*x^e into the map (e reduced, cancellations applied).
    void add_term(uint64_t e, ElemIndex c) {
        if (c == 0) return;
        uint32_t re = reduce_exponent(e);
        auto it = terms_.find(re);
        if (it == terms_.end()) {
            terms_.emplace(re, c);
            return;
        }
        it->second = field_->add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }

    ElemIndex evaluate(ElemIndex x) const {
        ElemIndex acc = 0;
        for (const auto& [e, c] : terms_)
            acc = field_->add(acc, field_->mul(c, field_->pow(x, e)));
        return acc;
    }

    FnTable tabulate() const {
        FnTable t(field_->q());
        for (ElemIndex x = 0; x < field_->q(); ++x) t[x] = evaluate(x);
        return t;
    }

    friend PolyFn operator+(const PolyFn& f, const PolyFn& g) {
        f.check(g);
        PolyFn out = f;
        for (const auto& [e, c] : g.terms_) out.add_term(e, c);
        return out;
    }
    PolyFn operator-() const {
        PolyFn out(field_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, field_->neg(c));
        return out;
    }
    friend PolyFn operator-(const PolyFn& f, const PolyFn& g) { return f + (-g); }
    friend PolyFn operator*(const PolyFn& f, const PolyFn& g) {
        f.check(g);
        PolyFn out(f.field_);
        for (const auto& [e1, c1] : f.terms_)
            for (const auto& [e2, c2] : g.terms_)
                out.add_term(uint64_t(e1) + e2, f.field_->mul(c1, c2));
        return out;
    }

    PolyFn scale(ElemIndex c) const {
        PolyFn out(field_);
        for (const auto& [e, k] : terms_) out.add_term(e, field_->mul(c, k));
        return out;
    }

    friend bool operator==(const PolyFn& f, const PolyFn& g) {
        return f.field_->same_as(*g.field_) && f.terms_ == g.terms_;
    }
    friend bool operator!=(const PolyFn& f, const PolyFn& g) { return !(f == g); }

private:
    void check(const PolyFn& other) const {
        if (!field_->same_as(*other.field_))
            throw FieldMismatch("polynomials over different fields mixed");
    }
    Field field_;
    std::map<uint32_t, ElemIndex> terms_;
};

/// f(x + a) as a reduced polynomial in x (binomial expansion, Lucas mod p).
inline PolyFn shift(const PolyFn& f, ElemIndex a) {
    const auto& F = f.field();
    if (a == 0) return f;
    detail::BinomModP binom(F->p());
    PolyFn out(F);
    for (const auto& [e, c] : f.terms()) {
        ElemIndex apow = 1; // a^(e-k), built downward from k = e
        for (uint32_t k = e + 1; k-- > 0;) {
            uint64_t b = binom(e, k);
            if (b)
                out.add_term(k, F->mul(c, F->mul(ElemIndex(b % F->p()), apow)));
            apow = F->mul(apow, a);
        }
    }
    return out;
}

/// The difference function Delta_{f,a}(x) = f(x + a) - f(x), reduced.
inline PolyFn delta(const PolyFn& f, ElemIndex a) { return shift(f, a) - f; }

/// The symmetric form D_f(x, y) = f(x+y) - f(x) - f(y), evaluated pointwise.
inline ElemIndex dform(const PolyFn& f, ElemIndex x, ElemIndex y) {
    const auto& F = f.field();
    return F->sub(F->sub(f.evaluate(F->add(x, y)), f.evaluate(x)), f.evaluate(y));
}

/// (f o g)(x) = f(g(x)) as a reduced polynomial.
inline PolyFn compose(const PolyFn& f, const PolyFn& g) {
    if (!f.field()->same_as(*g.field()))
        throw FieldMismatch("polynomials over different fields composed");
    PolyFn out(f.field());
    for (const auto& [e, c] : f.terms()) {
        // g^e by square-and-multiply over PolyFn.
        PolyFn acc = PolyFn::constant(f.field(), 1);
        PolyFn base = g;
        uint64_t k = e;
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        out = out + acc.scale(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial literals: "c*x^e + ...". Coefficients are integers (reduced mod
// p) or bracketed coordinate tuples like [0,1]; "x" alone means exponent 1.
// Examples: "x^9", "2*x^6 + [0,1]*x^2", "x^5 - x".
// ---------------------------------------------------------------------------

namespace detail {

struct LiteralCursor {
    std::string s; // whitespace stripped up front
    size_t pos = 0;
    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("bad polynomial literal at position " +
                         std::to_string(pos) + ": " + why);
    }
    int64_t integer() {
        bool neg = false;
        if (peek() == '-') { neg = true; ++pos; }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s[pos] - '0');
            if (v > (int64_t(1) << 40)) fail("number too large");
            ++pos;
        }
        return neg ? -v : v;
    }
};

} // namespace detail

inline PolyFn parse_poly(const std::string& text, const Field& field) {
    detail::LiteralCursor cur;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) cur.s.push_back(ch);
    if (cur.s.empty()) cur.fail("empty literal");

    const uint32_t p = field->p();
    auto reduce_int = [&](int64_t v) -> ElemIndex {
        int64_t m = v % int64_t(p);
        return ElemIndex(m < 0 ? m + p : m);
    };

    PolyFn out(field);
    bool first = true;
    while (!cur.done()) {
        // Sign between terms (optional leading sign on the first).
        bool negate = false;
        if (cur.peek() == '+' || cur.peek() == '-') {
            negate = cur.peek() == '-';
            ++cur.pos;
        } else if (!first) {
            cur.fail("expected '+' or '-' between terms");
        }
        first = false;

        // Coefficient: integer, tuple, or implicit 1.
        ElemIndex coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = reduce_int(cur.integer());
            saw_coeff = true;
        } else if (cur.peek() == '[') {
            ++cur.pos;
            std::vector<uint32_t> tuple;
            while (true) {
                tuple.push_back(reduce_int(cur.integer()));
                if (cur.peek() == ',') { ++cur.pos; continue; }
                if (cur.peek() == ']') { ++cur.pos; break; }
                cur.fail("expected ',' or ']' in coefficient tuple");
            }
            if (tuple.size() > field->r()) cur.fail("coefficient tuple longer than r");
            coeff = field->from_coeffs(tuple);
            saw_coeff = true;
        }
        if (saw_coeff && cur.peek() == '*') ++cur.pos;

        // Variable part.
        uint64_t e = 0;
        if (cur.peek() == 'x') {
            ++cur.pos;
            e = 1;
            if (cur.peek() == '^') {
                ++cur.pos;
                int64_t raw = cur.integer();
                if (raw < 0) cur.fail("negative exponent");
                e = uint64_t(raw);
            }
        } else if (!saw_coeff) {
            cur.fail("expected a coefficient or 'x'");
        }

        out.add_term(e, negate ? field->neg(coeff) : coeff);
    }
    return out;
}

/// Canonical rendering: terms by descending exponent, prime-subfield
/// coefficients as bare integers, others as [c0,...,c_{r-1}], unit
/// coefficients elided. parse_poly(render_poly(f)) == f.
inline std::string render_poly(const PolyFn& f) {
    if (f.is_zero_fn()) return "0";
    const auto& F = f.field();
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto [e, c] = *it;
        if (!out.empty()) out += " + ";
        std::string cs;
        if (c < F->p()) {
            cs = std::to_string(c);
        } else {
            auto digits = F->coeffs(c);
            cs = "[";
            for (size_t i = 0; i < digits.size(); ++i) {
                if (i) cs += ",";
                cs += std::to_string(digits[i]);
            }
            cs += "]";
        }
        if (e == 0) {
            out += cs;
            continue;
        }
        if (cs != "1") out += cs + "*";
        out += "x";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace alltoplab
