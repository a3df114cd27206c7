// SAGBI bases of the invariant ring for n <= 4, initial-exponent semigroup
// membership and decomposition, the subduction algorithm, the n = 4
// relations with p-elimination, and conversion to observables.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseinv/group.hpp"
#include "phaseinv/observables.hpp"
#include "phaseinv/spoly.hpp"
#include "phaseinv/symfun.hpp"

namespace phaseinv {

struct UnsupportedN : std::invalid_argument {
    UnsupportedN() : std::invalid_argument("finite SAGBI basis exists only for n = 2, 3, 4") {}
};
struct NotInSemigroup : std::domain_error {
    NotInSemigroup() : std::domain_error("exponent is not in the initial-exponent semigroup") {}
};
struct NotInvariant : std::invalid_argument {
    NotInvariant() : std::invalid_argument("polynomial is not G-invariant") {}
};
struct InitialExponentNotInS : std::logic_error {
    InitialExponentNotInS()
        : std::logic_error("initial exponent of an invariant escaped the semigroup") {}
};

// Membership in the semigroup of initial exponents of invariants:
// sum zero, weakly decreasing, and (a_1..a_n) >=lex (-a_n..-a_1).
inline bool in_semigroup(const ExponentVector& a) {
    if (a.shape().m != 1) throw std::invalid_argument("in_semigroup: single array required");
    const int n = a.shape().n;
    int sum = 0;
    for (int j = 0; j < n; ++j) sum += a.at(0, j);
    if (sum != 0) return false;
    for (int j = 0; j + 1 < n; ++j)
        if (a.at(0, j) < a.at(0, j + 1)) return false;
    for (int j = 0; j < n; ++j) {
        const int lhs = a.at(0, j);
        const int rhs = -a.at(0, n - 1 - j);
        if (lhs != rhs) return lhs > rhs;
    }
    return true;
}

struct SagbiGenerator {
    std::string name;
    LaurentPolynomial poly;
    ExponentVector initial;
};

class SagbiBasis {
public:
    explicit SagbiBasis(int n) : n_(n) {
        if (n < 2 || n > 4) throw UnsupportedN();
        const auto c = ratio_char_coeffs(n);
        const int count = n - 1;  // c_1..c_{n-1}
        for (int i = 0; i < count; ++i) add("c" + std::to_string(i + 1), c[i]);
        if (n == 4) add("p", p_poly());
    }

    int n() const { return n_; }
    const std::vector<SagbiGenerator>& generators() const { return generators_; }
    const SagbiGenerator& generator(const std::string& name) const {
        for (const auto& g : generators_)
            if (g.name == name) return g;
        throw std::invalid_argument("no generator named '" + name + "'");
    }

    // Closed-form decomposition of a semigroup element over the initial
    // exponents; multiplicities by generator name, no search.
    std::map<std::string, int> decompose_initial(const ExponentVector& a) const {
        if (!in_semigroup(a)) throw NotInSemigroup();
        std::map<std::string, int> mult;
        if (n_ == 2) {
            mult["c1"] = a.at(0, 0);
        } else if (n_ == 3) {
            // a (1,0,-1) + b (2,-1,-1) = (a+2b, -b, -a-b).
            mult["c1"] = a.at(0, 1) - a.at(0, 2);
            mult["c2"] = -a.at(0, 1);
        } else {
            int a1 = a.at(0, 0), b = a.at(0, 1), c = a.at(0, 2), d = a.at(0, 3);
            if (b > 0) {
                // Peel off b copies of in(p) = (1, 1, -1, -1) first.
                mult["p"] = b;
                a1 -= b;
                c += b;
                d += b;
                b = 0;
            }
            mult["c1"] = c - d;
            mult["c2"] = b - c;
            mult["c3"] = -b;
        }
        for (auto it = mult.begin(); it != mult.end();) {
            if (it->second < 0) throw NotInSemigroup();
            it = it->second == 0 ? mult.erase(it) : std::next(it);
        }
        return mult;
    }

private:
    void add(std::string name, LaurentPolynomial poly) {
        ExponentVector init = poly.initial_exponent();
        generators_.push_back({std::move(name), std::move(poly), std::move(init)});
    }

    // p = s_2(X) s_2(X^{-1}) for n = 4.
    LaurentPolynomial p_poly() const {
        const VariableShape shape{1, n_};
        LaurentPolynomial out(shape);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                for (int k = 0; k < n_; ++k)
                    for (int l = k + 1; l < n_; ++l) {
                        ExponentVector e(shape);
                        e.at(0, i) += 1;
                        e.at(0, j) += 1;
                        e.at(0, k) -= 1;
                        e.at(0, l) -= 1;
                        out.add_term(e, Rational(1));
                    }
        return out;
    }

    int n_;
    std::vector<SagbiGenerator> generators_;
};

struct SubductionResult {
    SymbolicPolynomial expression;  // in the generator symbols c1.., p
    int steps = 0;
};

// Subduction: repeatedly cancel the leading term against a product of
// basis elements; terminates because only finitely many semigroup elements
// lie lex-below a given one.
inline SubductionResult subduct(const LaurentPolynomial& f, const SagbiBasis& basis) {
    if (f.shape().m != 1 || f.shape().n != basis.n())
        throw std::invalid_argument("subduct: polynomial shape does not match basis");
    if (!is_invariant(f)) throw NotInvariant();

    SubductionResult result;
    LaurentPolynomial work = f;
    ExponentVector prev(work.shape());
    while (!work.is_zero()) {
        if (work.is_constant()) {
            result.expression += SymbolicPolynomial::constant(work.constant_value());
            break;
        }
        const ExponentVector lead = work.initial_exponent();
        if (result.steps > 0 && !(lead < prev)) throw InitialExponentNotInS();
        prev = lead;
        std::map<std::string, int> mult;
        try {
            mult = basis.decompose_initial(lead);
        } catch (const NotInSemigroup&) {
            throw InitialExponentNotInS();
        }
        // All generator leading coefficients are 1, so the cancellation
        // coefficient is just the leading coefficient of the remainder.
        const Rational coeff = work.leading_coefficient();
        SymbolicPolynomial term = SymbolicPolynomial::constant(coeff);
        LaurentPolynomial prod = LaurentPolynomial::constant(work.shape(), coeff);
        for (const auto& [name, e] : mult) {
            term *= SymbolicPolynomial::symbol(name).pow(e);
            prod *= basis.generator(name).poly.pow(e);
        }
        result.expression += term;
        work -= prod;
        ++result.steps;
    }
    return result;
}

inline SubductionResult subduct(const LaurentPolynomial& f, int n) {
    return subduct(f, SagbiBasis(n));
}

// The n = 4 relations: c2^2, c4, c5, c6 rewritten in k[c1, c2, c3, p],
// recomputed by subduction (never transcribed).
struct N4Relations {
    SymbolicPolynomial c2_squared;
    SymbolicPolynomial c4;
    SymbolicPolynomial c5;
    SymbolicPolynomial c6;
};

inline N4Relations n4_relations() {
    SagbiBasis basis(4);
    const auto c = ratio_char_coeffs(4);
    N4Relations rel;
    // c2 is itself a generator, so subduct c2^2 via the other decomposition
    // of its initial exponent: 2 in(c2) = in(c3) + in(p).
    const LaurentPolynomial c3p = basis.generator("c3").poly * basis.generator("p").poly;
    rel.c2_squared =
        subduct(c[1] * c[1] - c3p, basis).expression +
        SymbolicPolynomial::symbol("c3") * SymbolicPolynomial::symbol("p");
    rel.c4 = subduct(c[3], basis).expression;
    rel.c5 = subduct(c[4], basis).expression;
    rel.c6 = subduct(c[5], basis).expression;
    return rel;
}

// p as a rational function of c1..c4, obtained by eliminating p^2 between
// the two relations and solving the remaining linear equation.
struct PElimination {
    SymbolicPolynomial numerator;    // in c1..c4
    SymbolicPolynomial denominator;  // 2 + c1 + c1^2 - 3 c2 - c3
};

inline PElimination eliminate_p(const N4Relations& rel) {
    // rel.c2_squared - c2^2 = 0 and rel.c4 - c4 = 0, as polynomials in
    // c1..c4 and p.
    SymbolicPolynomial r1 = rel.c2_squared - SymbolicPolynomial::symbol("c2").pow(2);
    SymbolicPolynomial r2 = rel.c4 - SymbolicPolynomial::symbol("c4");

    auto by_p1 = r1.collect("p");
    auto by_p2 = r2.collect("p");
    for (const auto& [d, c] : by_p1)
        if (d > 2) throw std::logic_error("eliminate_p: unexpected p-degree");
    // Scale r1 so its p^2 coefficient cancels against a multiple of r2's.
    SymbolicPolynomial a2 = by_p1.count(2) ? by_p1[2] : SymbolicPolynomial();
    SymbolicPolynomial b2 = by_p2.count(2) ? by_p2[2] : SymbolicPolynomial();
    // combo = b2 * r1 - a2 * r2 has no p^2 term.
    SymbolicPolynomial combo = b2 * r1 - a2 * r2;
    auto by_p = combo.collect("p");
    if (by_p.count(2) && !by_p[2].is_zero())
        throw std::logic_error("eliminate_p: p^2 failed to cancel");
    SymbolicPolynomial lin = by_p.count(1) ? by_p[1] : SymbolicPolynomial();
    SymbolicPolynomial cst = by_p.count(0) ? by_p[0] : SymbolicPolynomial();
    // lin * p + cst = 0  =>  p = -cst / lin.
    PElimination out{-cst, lin};
    // Normalize sign so the denominator's constant term is positive.
    auto constant_term = [&](const SymbolicPolynomial& s) {
        for (const auto& [m, c] : s.terms())
            if (m.empty()) return c;
        return Rational(0);
    };
    if (constant_term(out.denominator) < Rational(0)) {
        out.numerator = -out.numerator;
        out.denominator = -out.denominator;
    }
    return out;
}

inline PElimination eliminate_p() { return eliminate_p(n4_relations()); }

// Newton substitution c_i -> polynomial in (q_1 - n, ..., q_i - n).
// Symbols "c<i>" become polynomials in symbols "q<r>".
inline SymbolicPolynomial c_to_q(const SymbolicPolynomial& expr, int n) {
    const int big_n = n * (n - 1);
    SymbolicPolynomial out = expr;
    for (int i = big_n; i >= 1; --i) {
        const std::string name = "c" + std::to_string(i);
        SymbolicPolynomial repl = newton_e_from_p(i, big_n);
        for (int r = i; r >= 1; --r) {
            SymbolicPolynomial q_minus_n =
                SymbolicPolynomial::symbol("q" + std::to_string(r)) -
                SymbolicPolynomial::constant(Rational(n));
            repl = repl.substitute(sym_p(r), q_minus_n);
        }
        out = out.substitute(name, repl);
    }
    return out;
}

// Lift a polynomial in named symbols to an ObservableExpression via a
// per-symbol factory.
template <class SymbolFactory>
ObservableExpression spoly_to_expression(const SymbolicPolynomial& poly,
                                         SymbolFactory&& factory) {
    std::vector<ObservableExpression> terms;
    for (const auto& [m, c] : poly.terms()) {
        std::vector<ObservableExpression> factors;
        if (!(c == Rational(1)) || m.empty())
            factors.push_back(ObservableExpression::constant(c));
        for (const auto& [v, e] : m) {
            ObservableExpression sym = factory(v);
            factors.push_back(e == 1 ? sym : ObservableExpression::pow(sym, e));
        }
        terms.push_back(factors.size() == 1 ? factors[0]
                                            : ObservableExpression::mul(std::move(factors)));
    }
    if (terms.empty()) return ObservableExpression::constant(Rational(0));
    if (terms.size() == 1) return terms[0];
    return ObservableExpression::add(std::move(terms));
}

// Factory for single-array q-symbols "q<r>" embedded at array position 0 of
// an m-array observable index.
inline ObservableExpression q_symbol_expression(const std::string& name, int m) {
    if (name.empty() || name[0] != 'q')
        throw std::invalid_argument("expected a q-symbol, got '" + name + "'");
    std::vector<long> idx(m, 0);
    idx[0] = std::stol(name.substr(1));
    return ObservableExpression::observable(std::move(idx));
}

}  // namespace phaseinv
