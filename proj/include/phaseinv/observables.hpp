// Construction and symbolic expansion of the named quantities: observables
// q_{r_1..r_m}, structure invariants E_m, the single-array family e_i, and
// the ratio characteristic polynomial coefficients c_i.
#pragma once

#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phaseinv/expression.hpp"
#include "phaseinv/laurent.hpp"

namespace phaseinv {

// q_{r_1..r_m} = tr(X_1^{r_1}..X_m^{r_m}) tr(X_1^{-r_1}..X_m^{-r_m}) as an
// exact degree-zero polynomial; q_{0..0} = n^2.
inline LaurentPolynomial q_poly(const ObservableIndex& idx, int n) {
    const int m = static_cast<int>(idx.r.size());
    const VariableShape shape{m, n};
    LaurentPolynomial out(shape);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ExponentVector e(shape);
            for (int h = 0; h < m; ++h) {
                e.at(h, i) += static_cast<int>(idx.r[h]);
                e.at(h, j) -= static_cast<int>(idx.r[h]);
            }
            out.add_term(e, Rational(1));
        }
    return out;
}

inline LaurentPolynomial q_poly(std::vector<long> index, int n) {
    return q_poly(ObservableIndex::canonical(std::move(index)), n);
}

// E_m = tr(X_1)..tr(X_m) tr((X_1..X_m)^{-1}) + the mirrored summand.
inline LaurentPolynomial E_m_poly(int n, int m) {
    if (m < 1) throw std::invalid_argument("E_m_poly: m must be >= 1");
    const VariableShape shape{m, n};
    LaurentPolynomial out(shape);
    // Terms are indexed by (j_1, .., j_m, j): x_{1 j_1} ... x_{m j_m} /
    // (x_{1 j} ... x_{m j}), plus the reciprocal.
    std::vector<int> idx(m, 0);
    for (;;) {
        for (int j = 0; j < n; ++j) {
            ExponentVector e(shape);
            for (int h = 0; h < m; ++h) {
                e.at(h, idx[h]) += 1;
                e.at(h, j) -= 1;
            }
            out.add_term(e, Rational(1));
            ExponentVector mirror(shape);
            for (int h = 0; h < m; ++h) {
                mirror.at(h, idx[h]) -= 1;
                mirror.at(h, j) += 1;
            }
            out.add_term(mirror, Rational(1));
        }
        int h = 0;
        while (h < m && ++idx[h] == n) idx[h++] = 0;
        if (h == m) break;
    }
    return out;
}

// e_i = E_2(X, X^i): single-array specialization of E_2.
inline LaurentPolynomial e_i_poly(int n, int i) {
    return fold_arrays(E_m_poly(n, 2), {1, i});
}

// Elementary symmetric functions c_1..c_N of the N = n(n-1) ratios x_i/x_j.
inline std::vector<LaurentPolynomial> ratio_char_coeffs(int n) {
    if (n < 2) throw std::invalid_argument("ratio_char_coeffs: n must be >= 2");
    const VariableShape shape{1, n};
    const int big_n = n * (n - 1);
    std::vector<LaurentPolynomial> e;
    e.reserve(big_n + 1);
    for (int k = 0; k <= big_n; ++k) e.push_back(LaurentPolynomial(shape));
    e[0] = LaurentPolynomial::constant(shape, Rational(1));
    int processed = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            ExponentVector exp(shape);
            exp.at(0, i) = 1;
            exp.at(0, j) = -1;
            const auto ratio = LaurentPolynomial::monomial(shape, exp, Rational(1));
            ++processed;
            for (int k = std::min(processed, big_n); k >= 1; --k)
                e[k] += e[k - 1] * ratio;
        }
    return std::vector<LaurentPolynomial>(e.begin() + 1, e.end());
}

// A rational function as an unreduced numerator/denominator pair.
struct LaurentFraction {
    LaurentPolynomial num;
    LaurentPolynomial den;
};

namespace detail {

inline LaurentFraction expand_node(const ExprNode* node, int n, int m,
                                   std::unordered_map<const ExprNode*, LaurentFraction>& memo);

inline LaurentFraction expand_pow(LaurentFraction base, int e) {
    if (e < 0) {
        std::swap(base.num, base.den);
        e = -e;
    }
    return {base.num.pow(e), base.den.pow(e)};
}

inline LaurentFraction expand_node(const ExprNode* node, int n, int m,
                                   std::unordered_map<const ExprNode*, LaurentFraction>& memo) {
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    const VariableShape shape{m, n};
    const auto one = LaurentPolynomial::constant(shape, Rational(1));
    LaurentFraction out{LaurentPolynomial(shape), one};
    switch (node->op) {
        case ExprOp::Constant:
            out.num = LaurentPolynomial::constant(shape, node->value);
            break;
        case ExprOp::Observable: {
            if (node->index.r.size() != static_cast<std::size_t>(m))
                throw UndefinedSymbol(node->index.str() + " for m=" + std::to_string(m));
            out.num = q_poly(node->index, n);
            break;
        }
        case ExprOp::Generator:
            throw UndefinedSymbol(node->generator);
        case ExprOp::Add:
            for (const auto& a : node->args) {
                auto f = expand_node(a.get(), n, m, memo);
                // num/den + f.num/f.den
                out = {out.num * f.den + f.num * out.den, out.den * f.den};
            }
            break;
        case ExprOp::Mul:
            out.num = one;
            for (const auto& a : node->args) {
                auto f = expand_node(a.get(), n, m, memo);
                out = {out.num * f.num, out.den * f.den};
            }
            break;
        case ExprOp::Div: {
            auto fn = expand_node(node->args[0].get(), n, m, memo);
            auto fd = expand_node(node->args[1].get(), n, m, memo);
            if (fd.num.is_zero()) throw DenominatorVanishes();
            out = {fn.num * fd.den, fn.den * fd.num};
            break;
        }
        case ExprOp::Neg: {
            auto f = expand_node(node->args[0].get(), n, m, memo);
            out = {-f.num, f.den};
            break;
        }
        case ExprOp::Pow: {
            auto f = expand_node(node->args[0].get(), n, m, memo);
            out = expand_pow(std::move(f), node->exponent);
            break;
        }
    }
    memo.emplace(node, out);
    return out;
}

}  // namespace detail

// Expand an expression into a numerator/denominator pair of Laurent
// polynomials; E is an identity for a target T iff num - T*den == 0.
// Generator symbols are not defined here (substitute them first).
inline LaurentFraction expression_expand(const ObservableExpression& expr, int n, int m) {
    std::unordered_map<const ExprNode*, LaurentFraction> memo;
    return detail::expand_node(expr.root().get(), n, m, memo);
}

}  // namespace phaseinv
