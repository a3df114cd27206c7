// Exact rational scalars used as the coefficient field everywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

#include <stdexcept>
#include <string>

namespace phaseinv {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always canonical: gcd(|num|, den) = 1,
// den > 0, zero is 0/1.  Backed by boost::multiprecision::cpp_rational,
// which maintains exactly this normal form.
class Rational {
public:
    using rep = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& n, const BigInt& d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_ = d < 0 ? rep(-n, BigInt(-d)) : rep(n, d);
    }
    explicit Rational(rep v) : v_(std::move(v)) {}

    const rep& value() const { return v_; }
    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }

    Rational operator-() const { return Rational(rep(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(rep(1) / v_);
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        Rational base = e < 0 ? inverse() : *this;
        unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
        Rational acc(1);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    double to_double() const { return static_cast<double>(v_); }
    // Exact binary value of the double.
    static Rational from_double(double d) {
        if (!std::isfinite(d)) throw std::invalid_argument("Rational::from_double: not finite");
        return Rational(rep(d));
    }

    // Text form "p/q" or "p".
    std::string str() const {
        std::string s = numerator().str();
        if (!is_integer()) s += "/" + denominator().str();
        return s;
    }

    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(text));
            return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        }
    }

private:
    rep v_;
};

}  // namespace phaseinv
