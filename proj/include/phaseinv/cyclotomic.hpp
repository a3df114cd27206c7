// Cyclotomic integer arithmetic: Z[t]/(t^k - 1), with reduction mod the
// k-th cyclotomic polynomial as an explicit separate step.
#pragma once

#include <stdexcept>
#include <vector>

#include "phaseinv/rational.hpp"

namespace phaseinv {

struct OrderMismatch : std::invalid_argument {
    OrderMismatch() : std::invalid_argument("cyclotomic orders differ") {}
};
struct CompositeOrder : std::invalid_argument {
    CompositeOrder() : std::invalid_argument("primitive-root zero test requires prime order") {}
};

namespace detail {
inline bool is_prime(long k) {
    if (k < 2) return false;
    for (long d = 2; d * d <= k; ++d)
        if (k % d == 0) return false;
    return true;
}

// Exact division of integer polynomials, quotient only.  Divisor must be
// monic; used solely by the cyclotomic divisor recursion.
inline std::vector<BigInt> poly_divide_monic(std::vector<BigInt> num,
                                             const std::vector<BigInt>& den) {
    while (!num.empty() && num.back() == 0) num.pop_back();
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {};
    std::vector<BigInt> quot(num.size() - dn);
    for (std::size_t i = num.size(); i-- > dn;) {
        BigInt c = num[i];
        if (c == 0) continue;
        quot[i - dn] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i - dn + j] -= c * den[j];
    }
    return quot;
}
}  // namespace detail

// Coefficients of the k-th cyclotomic polynomial Phi_k, ascending degree.
// Computed by the divisor recursion t^k - 1 = prod_{d | k} Phi_d.
inline std::vector<BigInt> cyclotomic_polynomial(long k) {
    if (k < 1) throw std::invalid_argument("cyclotomic_polynomial: k must be positive");
    std::vector<BigInt> num(k + 1);
    num[0] = -1;
    num[k] = 1;
    for (long d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        num = detail::poly_divide_monic(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

// Element of Z[t]/(t^k - 1); coeffs[i] is the coefficient of t^i.
class CyclotomicInt {
public:
    explicit CyclotomicInt(long order) : order_(order), coeffs_(order) {
        if (order < 1) throw std::invalid_argument("CyclotomicInt: order must be positive");
    }
    CyclotomicInt(long order, std::vector<BigInt> coeffs)
        : order_(order), coeffs_(std::move(coeffs)) {
        if (order < 1 || coeffs_.size() != static_cast<std::size_t>(order))
            throw std::invalid_argument("CyclotomicInt: bad coefficient vector");
    }

    // t^e with the exponent wrapped mod k.
    static CyclotomicInt monomial(long order, long exponent, const BigInt& coeff = 1) {
        CyclotomicInt r(order);
        long e = exponent % order;
        if (e < 0) e += order;
        r.coeffs_[e] = coeff;
        return r;
    }

    static CyclotomicInt constant(long order, const BigInt& c) {
        CyclotomicInt r(order);
        r.coeffs_[0] = c;
        return r;
    }

    long order() const { return order_; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt& operator[](std::size_t i) { return coeffs_[i]; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    CyclotomicInt operator-() const {
        CyclotomicInt r(order_);
        for (long i = 0; i < order_; ++i) r.coeffs_[i] = -coeffs_[i];
        return r;
    }
    CyclotomicInt& operator+=(const CyclotomicInt& o) {
        check(o);
        for (long i = 0; i < order_; ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    CyclotomicInt& operator-=(const CyclotomicInt& o) {
        check(o);
        for (long i = 0; i < order_; ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check(const CyclotomicInt& o) const {
        if (order_ != o.order_) throw OrderMismatch();
    }

    long order_;
    std::vector<BigInt> coeffs_;
};

// Convolution with exponents wrapped mod k.
inline CyclotomicInt cyc_mul(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.order() != b.order()) throw OrderMismatch();
    const long k = a.order();
    CyclotomicInt r(k);
    for (long i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < k; ++j) {
            if (b[j] == 0) continue;
            r[(i + j) % k] += a[i] * b[j];
        }
    }
    return r;
}

inline CyclotomicInt cyc_pow(const CyclotomicInt& a, long e) {
    CyclotomicInt acc = CyclotomicInt::constant(a.order(), 1);
    CyclotomicInt base = a;
    if (e < 0) throw std::invalid_argument("cyc_pow: negative exponent");
    while (e) {
        if (e & 1) acc = cyc_mul(acc, base);
        base = cyc_mul(base, base);
        e >>= 1;
    }
    return acc;
}

// a(t) with t replaced by t^-1 = t^{k-1} ... : mirrors the exponents mod k.
inline CyclotomicInt cyc_reciprocal(const CyclotomicInt& a) {
    const long k = a.order();
    CyclotomicInt r(k);
    for (long i = 0; i < k; ++i) r[(k - i) % k] = a[i];
    return r;
}

// Remainder of the coefficient vector mod Phi_k; degree < deg(Phi_k).
inline std::vector<BigInt> reduce_mod_cyclotomic(const CyclotomicInt& a) {
    const auto phi = cyclotomic_polynomial(a.order());
    std::vector<BigInt> rem = a.coeffs();
    const std::size_t dn = phi.size() - 1;
    for (std::size_t i = rem.size(); i-- > dn;) {
        BigInt c = rem[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < phi.size(); ++j) rem[i - dn + j] -= c * phi[j];
    }
    rem.resize(dn);
    return rem;
}

inline bool is_zero_mod_phi(const CyclotomicInt& a) {
    for (const auto& c : reduce_mod_cyclotomic(a))
        if (c != 0) return false;
    return true;
}

// Representative mod Phi_k for prime k, degree < k - 1.
inline std::vector<BigInt> reduce_primitive(const CyclotomicInt& a) {
    if (!detail::is_prime(a.order())) throw CompositeOrder();
    return reduce_mod_cyclotomic(a);
}

// Zero test in Z[zeta_k] for a primitive root zeta of prime order k:
// zero iff all coefficients are equal (Phi_k = 1 + t + ... + t^{k-1}).
inline bool cyc_is_zero_primitive(const CyclotomicInt& a) {
    if (!detail::is_prime(a.order())) throw CompositeOrder();
    for (long i = 1; i < a.order(); ++i)
        if (a[i] != a[0]) return false;
    return true;
}

}  // namespace phaseinv
