// Sparse multi-array Laurent polynomials with lexicographic initial
// exponents, exact evaluation, power substitution and a text grammar.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string_view>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseinv/rational.hpp"

namespace phaseinv {

struct ShapeMismatch : std::invalid_argument {
    ShapeMismatch() : std::invalid_argument("operand variable shapes differ") {}
};
struct ZeroPolynomial : std::domain_error {
    ZeroPolynomial() : std::domain_error("zero polynomial has no initial exponent") {}
};
struct ZeroCoordinate : std::domain_error {
    ZeroCoordinate() : std::domain_error("evaluation point has a zero coordinate") {}
};
struct SyntaxError : std::invalid_argument {
    SyntaxError(const std::string& what, std::size_t offset)
        : std::invalid_argument(what + " at offset " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};
struct UnknownVariable : std::invalid_argument {
    explicit UnknownVariable(const std::string& name)
        : std::invalid_argument("unknown variable '" + name + "'") {}
};

// m arrays of n variables each.
struct VariableShape {
    int m = 1;
    int n = 2;

    friend bool operator==(const VariableShape&, const VariableShape&) = default;
    int size() const { return m * n; }
};

// Integer exponent grid a_{hj}; total order is lexicographic on the
// flattened grid (array 1 first, within an array index 1 first).
class ExponentVector {
public:
    explicit ExponentVector(VariableShape shape)
        : shape_(shape), exps_(static_cast<std::size_t>(shape.size())) {}
    ExponentVector(VariableShape shape, std::vector<int> exps)
        : shape_(shape), exps_(std::move(exps)) {
        if (exps_.size() != static_cast<std::size_t>(shape.size()))
            throw std::invalid_argument("ExponentVector: grid size mismatch");
    }

    const VariableShape& shape() const { return shape_; }
    // h, j are 0-based here and throughout the implementation.
    int at(int h, int j) const { return exps_[h * shape_.n + j]; }
    int& at(int h, int j) { return exps_[h * shape_.n + j]; }
    const std::vector<int>& flat() const { return exps_; }

    int array_degree(int h) const {
        return std::accumulate(exps_.begin() + h * shape_.n,
                               exps_.begin() + (h + 1) * shape_.n, 0);
    }
    bool is_degree_zero() const {
        for (int h = 0; h < shape_.m; ++h)
            if (array_degree(h) != 0) return false;
        return true;
    }
    bool is_zero() const {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }

    ExponentVector& operator+=(const ExponentVector& o) {
        for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += o.exps_[i];
        return *this;
    }
    friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) {
        return a += b;
    }

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return a.exps_ == b.exps_;
    }
    friend bool operator<(const ExponentVector& a, const ExponentVector& b) {
        return a.exps_ < b.exps_;
    }
    friend bool operator>(const ExponentVector& a, const ExponentVector& b) { return b < a; }

private:
    VariableShape shape_;
    std::vector<int> exps_;
};

// Finite map exponent -> nonzero coefficient; canonical form, so equality
// is map equality.  Term order ascending lex, leading term at rbegin().
class LaurentPolynomial {
public:
    using TermMap = std::map<ExponentVector, Rational>;

    explicit LaurentPolynomial(VariableShape shape) : shape_(shape) {}

    static LaurentPolynomial constant(VariableShape shape, const Rational& c) {
        LaurentPolynomial p(shape);
        if (!c.is_zero()) p.terms_[ExponentVector(shape)] = c;
        return p;
    }
    static LaurentPolynomial monomial(VariableShape shape, const ExponentVector& e,
                                      const Rational& c) {
        LaurentPolynomial p(shape);
        if (!c.is_zero()) p.terms_[e] = c;
        return p;
    }

    const VariableShape& shape() const { return shape_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    bool is_degree_zero() const {
        for (const auto& [e, c] : terms_)
            if (!e.is_degree_zero()) return false;
        return true;
    }

    void add_term(const ExponentVector& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const ExponentVector& initial_exponent() const {
        if (terms_.empty()) throw ZeroPolynomial();
        return terms_.rbegin()->first;
    }
    const Rational& leading_coefficient() const {
        if (terms_.empty()) throw ZeroPolynomial();
        return terms_.rbegin()->second;
    }

    LaurentPolynomial operator-() const {
        LaurentPolynomial r(shape_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
        return a += b;
    }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
        return a -= b;
    }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a,
                                       const LaurentPolynomial& b) {
        a.check(b);
        LaurentPolynomial r(a.shape_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }
    LaurentPolynomial& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else {
            for (auto& [e, v] : terms_) v *= c;
        }
        return *this;
    }
    friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) {
        return a *= c;
    }

    LaurentPolynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("LaurentPolynomial::pow: negative exponent");
        LaurentPolynomial acc = constant(shape_, Rational(1));
        LaurentPolynomial base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.shape_ == b.shape_ && a.terms_ == b.terms_;
    }

private:
    void check(const LaurentPolynomial& o) const {
        if (!(shape_ == o.shape_)) throw ShapeMismatch();
    }

    VariableShape shape_;
    TermMap terms_;
};

// Exact substitution value at a grid of nonzero rationals (row-major h, j).
inline Rational evaluate(const LaurentPolynomial& p, const std::vector<Rational>& point) {
    const auto& s = p.shape();
    if (point.size() != static_cast<std::size_t>(s.size()))
        throw std::invalid_argument("evaluate: point size mismatch");
    for (const auto& c : point)
        if (c.is_zero()) throw ZeroCoordinate();
    Rational sum(0);
    for (const auto& [e, c] : p.terms()) {
        Rational term = c;
        for (int i = 0; i < s.size(); ++i)
            if (e.flat()[i] != 0) term *= point[i].pow(e.flat()[i]);
        sum += term;
    }
    return sum;
}

// X_h -> X_h^{powers[h]}: every exponent a_{hj} becomes powers[h] * a_{hj}.
inline LaurentPolynomial substitute_powers(const LaurentPolynomial& p,
                                           const std::vector<int>& powers) {
    const auto& s = p.shape();
    if (powers.size() != static_cast<std::size_t>(s.m))
        throw std::invalid_argument("substitute_powers: one power per array required");
    LaurentPolynomial r(s);
    for (const auto& [e, c] : p.terms()) {
        ExponentVector e2(s);
        for (int h = 0; h < s.m; ++h)
            for (int j = 0; j < s.n; ++j) e2.at(h, j) = powers[h] * e.at(h, j);
        r.add_term(e2, c);
    }
    return r;
}

// Collapse all arrays onto a single one: the j-th exponent of the result is
// sum_h weights[h] * a_{hj}.  With weights (1, i) this takes E_2(X, Y) to
// E_2(X, X^i).
inline LaurentPolynomial fold_arrays(const LaurentPolynomial& p,
                                     const std::vector<int>& weights) {
    const auto& s = p.shape();
    if (weights.size() != static_cast<std::size_t>(s.m))
        throw std::invalid_argument("fold_arrays: one weight per array required");
    VariableShape folded{1, s.n};
    LaurentPolynomial r(folded);
    for (const auto& [e, c] : p.terms()) {
        ExponentVector e2(folded);
        for (int j = 0; j < s.n; ++j) {
            int sum = 0;
            for (int h = 0; h < s.m; ++h) sum += weights[h] * e.at(h, j);
            e2.at(0, j) = sum;
        }
        r.add_term(e2, c);
    }
    return r;
}

namespace detail {

inline std::string variable_name(const VariableShape& s, int h, int j) {
    if (s.m == 1) return "x" + std::to_string(j + 1);
    return "x" + std::to_string(h + 1) + "_" + std::to_string(j + 1);
}

class LaurentParser {
public:
    LaurentParser(std::string_view text, VariableShape shape)
        : text_(text), shape_(shape) {}

    LaurentPolynomial parse() {
        LaurentPolynomial p = parse_expression();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return p;
    }

private:
    LaurentPolynomial parse_expression() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = (get() == '-');
        LaurentPolynomial p = parse_term();
        if (negate) p = -p;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return p;
            get();
            LaurentPolynomial t = parse_term();
            if (c == '+')
                p += t;
            else
                p -= t;
        }
    }

    LaurentPolynomial parse_term() {
        LaurentPolynomial p = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return p;
            std::size_t at = pos_;
            get();
            LaurentPolynomial f = parse_factor();
            if (c == '*') {
                p *= f;
            } else {
                // Division only by a single invertible term.
                if (f.term_count() != 1)
                    throw SyntaxError("division requires a one-term divisor", at);
                const auto& [e, coeff] = *f.terms().begin();
                ExponentVector inv(f.shape());
                for (int h = 0; h < shape_.m; ++h)
                    for (int j = 0; j < shape_.n; ++j) inv.at(h, j) = -e.at(h, j);
                p *= LaurentPolynomial::monomial(shape_, inv, coeff.inverse());
            }
        }
    }

    LaurentPolynomial parse_factor() {
        LaurentPolynomial base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            std::size_t at = pos_;
            get();
            long e = parse_integer();
            if (base.term_count() != 1 && e < 0)
                throw SyntaxError("negative power of a multi-term polynomial", at);
            if (e >= 0) return base.pow(static_cast<int>(e));
            const auto& [exp, coeff] = *base.terms().begin();
            ExponentVector scaled(shape_);
            for (int h = 0; h < shape_.m; ++h)
                for (int j = 0; j < shape_.n; ++j)
                    scaled.at(h, j) = static_cast<int>(e) * exp.at(h, j);
            return LaurentPolynomial::monomial(shape_, scaled, coeff.pow(e));
        }
        return base;
    }

    LaurentPolynomial parse_primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            LaurentPolynomial p = parse_expression();
            skip_ws();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            get();
            return p;
        }
        if (c == 'x') return parse_variable();
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
        throw SyntaxError("expected a term", pos_);
    }

    LaurentPolynomial parse_variable() {
        std::size_t at = pos_;
        get();  // 'x'
        long first = parse_unsigned();
        int h = 0, j = 0;
        if (shape_.m > 1) {
            if (peek() != '_') throw SyntaxError("expected '_' in multi-array variable", pos_);
            get();
            long second = parse_unsigned();
            h = static_cast<int>(first) - 1;
            j = static_cast<int>(second) - 1;
        } else {
            if (peek() == '_') throw SyntaxError("single-array variables have one index", pos_);
            j = static_cast<int>(first) - 1;
        }
        if (h < 0 || h >= shape_.m || j < 0 || j >= shape_.n)
            throw UnknownVariable(std::string(text_.substr(at, pos_ - at)));
        ExponentVector e(shape_);
        e.at(h, j) = 1;
        return LaurentPolynomial::monomial(shape_, e, Rational(1));
    }

    LaurentPolynomial parse_rational() {
        BigInt num(parse_digits());
        if (peek() == '/' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            get();
            BigInt den(parse_digits());
            return LaurentPolynomial::constant(shape_, Rational(num, den));
        }
        return LaurentPolynomial::constant(shape_, Rational(num));
    }

    long parse_integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            get();
        }
        long v = parse_unsigned();
        return neg ? -v : v;
    }

    long parse_unsigned() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError("expected a number", pos_);
        return std::stol(parse_digits());
    }

    std::string parse_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) throw SyntaxError("expected digits", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }

    std::string_view text_;
    VariableShape shape_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPolynomial parse_laurent(std::string_view text, VariableShape shape) {
    return detail::LaurentParser(text, shape).parse();
}

// Canonical rendering: terms in descending lex order, exponents via '^'.
// parse_laurent(format_laurent(p), p.shape()) == p.
inline std::string format_laurent(const LaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rational coeff = c;
        if (first) {
            if (coeff < Rational(0)) {
                out << "-";
                coeff = -coeff;
            }
        } else {
            out << (coeff < Rational(0) ? " - " : " + ");
            if (coeff < Rational(0)) coeff = -coeff;
        }
        first = false;
        std::vector<std::string> parts;
        if (!(coeff == Rational(1)) || e.is_zero()) parts.push_back(coeff.str());
        for (int h = 0; h < p.shape().m; ++h)
            for (int j = 0; j < p.shape().n; ++j) {
                int a = e.at(h, j);
                if (a == 0) continue;
                std::string v = detail::variable_name(p.shape(), h, j);
                if (a != 1) v += "^" + std::to_string(a);
                parts.push_back(v);
            }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out << "*";
            out << parts[i];
        }
    }
    return out.str();
}

}  // namespace phaseinv
