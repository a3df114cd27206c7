// Sparse polynomials over named abstract symbols (s_i, p_i, c_i, p, q_r,
// z_ij, ...) with exact rational coefficients.  The workhorse for Newton
// identities, subduction results and the z-variable calculus.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phaseinv/rational.hpp"

namespace phaseinv {

// Monomial: symbol name -> positive exponent.
using SymMonomial = std::map<std::string, int>;

class SymbolicPolynomial {
public:
    using TermMap = std::map<SymMonomial, Rational>;

    SymbolicPolynomial() = default;

    static SymbolicPolynomial constant(const Rational& c) {
        SymbolicPolynomial p;
        if (!c.is_zero()) p.terms_[SymMonomial{}] = c;
        return p;
    }
    static SymbolicPolynomial monomial(SymMonomial m, const Rational& coeff) {
        SymbolicPolynomial p;
        for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
        if (!coeff.is_zero()) p.terms_[std::move(m)] = coeff;
        return p;
    }
    static SymbolicPolynomial symbol(const std::string& name, int power = 1,
                                     const Rational& coeff = Rational(1)) {
        SymbolicPolynomial p;
        SymMonomial m;
        if (power != 0) m[name] = power;
        if (!coeff.is_zero()) p.terms_[m] = coeff;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("SymbolicPolynomial: not constant");
        return terms_.begin()->second;
    }

    void add_term(const SymMonomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SymbolicPolynomial operator-() const {
        SymbolicPolynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    SymbolicPolynomial& operator+=(const SymbolicPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SymbolicPolynomial& operator-=(const SymbolicPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend SymbolicPolynomial operator+(SymbolicPolynomial a, const SymbolicPolynomial& b) {
        return a += b;
    }
    friend SymbolicPolynomial operator-(SymbolicPolynomial a, const SymbolicPolynomial& b) {
        return a -= b;
    }
    friend SymbolicPolynomial operator*(const SymbolicPolynomial& a,
                                        const SymbolicPolynomial& b) {
        SymbolicPolynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                SymMonomial m = ma;
                for (const auto& [v, e] : mb) {
                    int ne = (m[v] += e);
                    if (ne == 0) m.erase(v);
                }
                r.add_term(m, ca * cb);
            }
        return r;
    }
    SymbolicPolynomial& operator*=(const SymbolicPolynomial& o) { return *this = *this * o; }
    SymbolicPolynomial& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else {
            for (auto& [m, v] : terms_) v *= c;
        }
        return *this;
    }
    friend SymbolicPolynomial operator*(SymbolicPolynomial a, const Rational& c) {
        return a *= c;
    }

    SymbolicPolynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("SymbolicPolynomial::pow: negative exponent");
        SymbolicPolynomial acc = constant(Rational(1));
        SymbolicPolynomial base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const SymbolicPolynomial& a, const SymbolicPolynomial& b) {
        return a.terms_ == b.terms_;
    }

    // Collect by powers of one symbol: result[d] is the coefficient (a
    // polynomial in the remaining symbols) of name^d.
    std::map<int, SymbolicPolynomial> collect(const std::string& name) const {
        std::map<int, SymbolicPolynomial> out;
        for (const auto& [m, c] : terms_) {
            SymMonomial rest = m;
            int d = 0;
            if (auto it = rest.find(name); it != rest.end()) {
                d = it->second;
                rest.erase(it);
            }
            out[d].add_term(rest, c);
        }
        return out;
    }

    // Replace one symbol by a polynomial.
    SymbolicPolynomial substitute(const std::string& name,
                                  const SymbolicPolynomial& repl) const {
        SymbolicPolynomial out;
        for (const auto& [m, c] : terms_) {
            SymMonomial rest = m;
            int d = 0;
            if (auto it = rest.find(name); it != rest.end()) {
                d = it->second;
                rest.erase(it);
            }
            SymbolicPolynomial term = SymbolicPolynomial::constant(c);
            SymbolicPolynomial base;
            base.terms_[rest] = Rational(1);
            term *= base;
            if (d != 0) term *= repl.pow(d);
            out += term;
        }
        return out;
    }

    // Rename a symbol (target must not collide within a monomial).
    SymbolicPolynomial rename(const std::map<std::string, std::string>& mapping) const {
        SymbolicPolynomial out;
        for (const auto& [m, c] : terms_) {
            SymMonomial nm;
            for (const auto& [v, e] : m) {
                auto it = mapping.find(v);
                const std::string& name = it == mapping.end() ? v : it->second;
                nm[name] += e;
                if (nm[name] == 0) nm.erase(name);
            }
            out.add_term(nm, c);
        }
        return out;
    }

    // Evaluate in any commutative ring with +, *, *=Rational and pow(int).
    template <class Ring>
    Ring evaluate_ring(const std::map<std::string, Ring>& assign, Ring zero,
                       Ring one) const {
        Ring sum = zero;
        for (const auto& [m, c] : terms_) {
            Ring term = one;
            for (const auto& [v, e] : m) {
                auto it = assign.find(v);
                if (it == assign.end())
                    throw std::invalid_argument("evaluate_ring: unbound symbol '" + v + "'");
                term = term * it->second.pow(e);
            }
            term *= c;
            sum = sum + term;
        }
        return sum;
    }

    Rational evaluate(const std::map<std::string, Rational>& assign) const {
        Rational sum(0);
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (const auto& [v, e] : m) {
                auto it = assign.find(v);
                if (it == assign.end())
                    throw std::invalid_argument("evaluate: unbound symbol '" + v + "'");
                term *= it->second.pow(e);
            }
            sum += term;
        }
        return sum;
    }

    std::vector<std::string> symbols() const {
        std::vector<std::string> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m)
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    TermMap terms_;
};

// Rendering: terms in reverse map order (higher monomials first), "2*c1^2 - 3*c2".
inline std::string format_spoly(const SymbolicPolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
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
        bool printed = false;
        if (!(coeff == Rational(1)) || m.empty()) {
            out << coeff.str();
            printed = true;
        }
        for (const auto& [v, e] : m) {
            if (printed) out << "*";
            out << v;
            if (e != 1) out << "^" << e;
            printed = true;
        }
    }
    return out.str();
}

namespace detail {

class SPolyParser {
public:
    explicit SPolyParser(std::string_view text) : text_(text) {}

    SymbolicPolynomial parse() {
        SymbolicPolynomial p = parse_expression();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxErrorAt("unexpected trailing input");
        return p;
    }

private:
    std::invalid_argument SyntaxErrorAt(const std::string& what) const {
        return std::invalid_argument(what + " at offset " + std::to_string(pos_));
    }

    SymbolicPolynomial parse_expression() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = (get() == '-');
        SymbolicPolynomial p = parse_term();
        if (negate) p = -p;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return p;
            get();
            SymbolicPolynomial t = parse_term();
            if (c == '+')
                p += t;
            else
                p -= t;
        }
    }

    SymbolicPolynomial parse_term() {
        SymbolicPolynomial p = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return p;
            get();
            SymbolicPolynomial f = parse_factor();
            if (c == '*') {
                p *= f;
            } else {
                if (!f.is_constant()) throw SyntaxErrorAt("division only by constants");
                p *= f.constant_value().inverse();
            }
        }
    }

    SymbolicPolynomial parse_factor() {
        SymbolicPolynomial base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            bool neg = peek() == '-';
            if (neg) get();
            int e = static_cast<int>(parse_unsigned());
            if (neg) throw SyntaxErrorAt("negative symbolic exponents unsupported");
            return base.pow(e);
        }
        return base;
    }

    SymbolicPolynomial parse_primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            SymbolicPolynomial p = parse_expression();
            skip_ws();
            if (peek() != ')') throw SyntaxErrorAt("expected ')'");
            get();
            return p;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                name += text_[pos_++];
            return SymbolicPolynomial::symbol(name);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num(parse_digits());
            if (peek() == '/' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                get();
                BigInt den(parse_digits());
                return SymbolicPolynomial::constant(Rational(num, den));
            }
            return SymbolicPolynomial::constant(Rational(num));
        }
        throw SyntaxErrorAt("expected a term");
    }

    long parse_unsigned() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxErrorAt("expected a number");
        return std::stol(parse_digits());
    }

    std::string parse_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline SymbolicPolynomial parse_spoly(std::string_view text) {
    return detail::SPolyParser(text).parse();
}

}  // namespace phaseinv
