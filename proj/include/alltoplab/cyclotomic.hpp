#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "alltoplab/poly.hpp"

namespace alltoplab {

using BigInt = boost::multiprecision::cpp_int;

/// An element of Z[w] with w = e^(2*pi*i/p), stored reduced modulo the p-th
/// cyclotomic polynomial: coefficients (c_0, ..., c_{p-2}) for
/// c_0 + c_1 w + ... + c_{p-2} w^(p-2). The reduction rule is
/// w^(p-1) = -(1 + w + ... + w^(p-2)); reduced forms are unique, so equality
/// of values is equality of coefficient vectors. Coefficients are
/// arbitrary-precision: character sums over q^2 terms never overflow.
class CycInt {
public:
    explicit CycInt(uint32_t p) : p_(p), c_(p - 1) {}

    static CycInt integer(uint32_t p, BigInt n) {
        CycInt z(p);
        z.c_[0] = std::move(n);
        return z;
    }
    /// w^k, k arbitrary (reduced mod p, then folded if k = p-1).
    static CycInt root_power(uint32_t p, uint64_t k) {
        std::vector<BigInt> counts(p);
        counts[k % p] = 1;
        return from_counts(p, counts);
    }

    uint32_t order() const { return p_; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// The value as a rational integer, when it is one.
    std::optional<BigInt> as_integer() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return std::nullopt;
        return c_[0];
    }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        a.check(b);
        CycInt out = a;
        for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
        return out;
    }
    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        a.check(b);
        CycInt out = a;
        for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= b.c_[i];
        return out;
    }
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check(b);
        // Convolve into exponents [0, 2p-4], fold mod p, then fold w^(p-1).
        std::vector<BigInt> conv(a.p_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                conv[(i + j) % a.p_] += a.c_[i] * b.c_[j];
        }
        return from_counts(a.p_, conv);
    }
    CycInt scale(const BigInt& n) const {
        CycInt out = *this;
        for (auto& x : out.c_) x *= n;
        return out;
    }

    /// Complex conjugation w^k -> w^(p-k).
    CycInt conj() const {
        std::vector<BigInt> counts(p_);
        counts[0] = c_[0];
        for (size_t k = 1; k < c_.size(); ++k) counts[p_ - k] = c_[k];
        return from_counts(p_, counts);
    }

    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

    /// "c0 + c1*w + c2*w^2 + ...", zero terms suppressed; "0" when zero.
    std::string debug_string() const {
        std::string out;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += c_[0].str();
                continue;
            }
            if (c_[k] != 1) out += c_[k].str() + "*";
            out += "w";
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

    /// Reduce a length-p exponent-count vector (coefficient of w^t at t) to
    /// canonical form via w^(p-1) = -(1 + w + ... + w^(p-2)).
    static CycInt from_counts(uint32_t p, const std::vector<BigInt>& counts) {
        CycInt z(p);
        const BigInt& top = counts[p - 1];
        for (size_t i = 0; i + 1 < p; ++i) z.c_[i] = counts[i] - top;
        return z;
    }

private:
    void check(const CycInt& other) const {
        if (p_ != other.p_)
            throw OrderMismatch("cyclotomic orders differ: " + std::to_string(p_) +
                                " vs " + std::to_string(other.p_));
    }
    uint32_t p_;
    std::vector<BigInt> c_;
};

/// Sum_t counts[t] * w^t for a length-p vector of nonnegative counts —
/// the bridge from trace-value histograms to exact sums.
inline CycInt from_exponent_counts(const std::vector<int64_t>& counts, uint32_t p) {
    if (counts.size() != p)
        throw Error("exponent-count vector must have length p");
    std::vector<BigInt> big(p);
    for (size_t t = 0; t < p; ++t) {
        if (counts[t] < 0) throw Error("exponent counts must be nonnegative");
        big[t] = counts[t];
    }
    return CycInt::from_counts(p, big);
}

/// |z|^2 = z * conj(z), exactly. For the character sums of interest the
/// result is a rational integer (extract with as_integer()).
inline CycInt norm_sq(const CycInt& z) { return z * z.conj(); }

/// The complete character sum Sum_{x in F_q} w^(tr(a f(x) + b x)), computed
/// by histogramming trace values and converting exactly.
inline CycInt char_sum(const PolyFn& f, ElemIndex a, ElemIndex b) {
    const auto& F = *f.field();
    std::vector<int64_t> counts(F.p(), 0);
    for (ElemIndex x = 0; x < F.q(); ++x) {
        ElemIndex v = F.add(F.mul(a, f.evaluate(x)), F.mul(b, x));
        ++counts[F.trace(v)];
    }
    return from_exponent_counts(counts, F.p());
}

} // namespace alltoplab
