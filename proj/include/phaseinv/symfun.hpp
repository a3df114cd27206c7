// Newton's identities, the classical rewrite of a symmetric polynomial in
// elementary symmetric polynomials, and palindromic normalization.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phaseinv/spoly.hpp"

namespace phaseinv {

struct IndexOutOfRange : std::out_of_range {
    IndexOutOfRange() : std::out_of_range("symmetric-function index out of range") {}
};
struct NotSymmetric : std::invalid_argument {
    NotSymmetric() : std::invalid_argument("input polynomial is not symmetric") {}
};

inline std::string sym_s(int i) { return "s" + std::to_string(i); }
inline std::string sym_p(int i) { return "p" + std::to_string(i); }

// p_r as a polynomial in s_1..s_r:
//   p_r = sum_{i=1}^{r-1} (-1)^{i-1} s_i p_{r-i} + (-1)^{r-1} r s_r.
inline SymbolicPolynomial newton_p_from_e(int r, int n_vars) {
    if (r < 1 || r > n_vars) throw IndexOutOfRange();
    std::vector<SymbolicPolynomial> p(r + 1);
    for (int k = 1; k <= r; ++k) {
        SymbolicPolynomial acc;
        for (int i = 1; i < k; ++i) {
            SymbolicPolynomial term = SymbolicPolynomial::symbol(sym_s(i)) * p[k - i];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        SymbolicPolynomial last = SymbolicPolynomial::symbol(sym_s(k)) * Rational(k);
        if (k % 2 == 0) last = -last;
        p[k] = acc + last;
    }
    return p[r];
}

// e_r as a polynomial in p_1..p_r:
//   e_r = (1/r) sum_{i=1}^{r} (-1)^{i-1} e_{r-i} p_i.
inline SymbolicPolynomial newton_e_from_p(int r, int n_vars) {
    if (r < 1 || r > n_vars) throw IndexOutOfRange();
    std::vector<SymbolicPolynomial> e(r + 1);
    e[0] = SymbolicPolynomial::constant(Rational(1));
    for (int k = 1; k <= r; ++k) {
        SymbolicPolynomial acc;
        for (int i = 1; i <= k; ++i) {
            SymbolicPolynomial term = e[k - i] * SymbolicPolynomial::symbol(sym_p(i));
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        acc *= Rational(BigInt(1), BigInt(k));
        e[k] = acc;
    }
    return e[r];
}

// Elementary symmetric polynomials s_0..s_max of the given variables.
inline std::vector<SymbolicPolynomial> elementary_in(const std::vector<std::string>& vars,
                                                     int max_degree) {
    std::vector<SymbolicPolynomial> e(max_degree + 1);
    e[0] = SymbolicPolynomial::constant(Rational(1));
    for (const auto& v : vars) {
        SymbolicPolynomial x = SymbolicPolynomial::symbol(v);
        for (int k = max_degree; k >= 1; --k) e[k] += e[k - 1] * x;
    }
    return e;
}

namespace detail {

inline std::vector<int> exponent_vector(const SymMonomial& m,
                                        const std::vector<std::string>& vars) {
    std::vector<int> out(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (auto it = m.find(vars[i]); it != m.end()) out[i] = it->second;
    return out;
}

inline bool symmetric_under_adjacent_transpositions(const SymbolicPolynomial& f,
                                                    const std::vector<std::string>& vars) {
    for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
        std::map<std::string, std::string> swap_map{{vars[i], vars[i + 1]},
                                                    {vars[i + 1], vars[i]}};
        if (!(f.rename(swap_map) == f)) return false;
    }
    return true;
}

}  // namespace detail

// Rewrite a symmetric polynomial in the listed variables as a polynomial in
// the elementary symmetric functions s_1..s_N, by leading-term subtraction.
inline SymbolicPolynomial decompose_in_elementary(const SymbolicPolynomial& f,
                                                  const std::vector<std::string>& vars) {
    if (!detail::symmetric_under_adjacent_transpositions(f, vars)) throw NotSymmetric();
    const int nv = static_cast<int>(vars.size());

    const auto elem = elementary_in(vars, nv);

    SymbolicPolynomial rest = f;
    SymbolicPolynomial out;
    while (!rest.is_zero()) {
        if (rest.is_constant()) {
            out += rest;
            break;
        }
        // Lex-leading exponent vector over the given variable order.
        auto lead = rest.terms().begin();
        auto lead_exp = detail::exponent_vector(lead->first, vars);
        for (auto it = std::next(rest.terms().begin()); it != rest.terms().end(); ++it) {
            auto exp = detail::exponent_vector(it->first, vars);
            if (exp > lead_exp) {
                lead = it;
                lead_exp = exp;
            }
        }
        const Rational coeff = lead->second;
        // For symmetric input the leading exponent is weakly decreasing.
        for (int i = 0; i + 1 < nv; ++i)
            if (lead_exp[i] < lead_exp[i + 1]) throw NotSymmetric();

        SymbolicPolynomial s_product = SymbolicPolynomial::constant(coeff);
        SymbolicPolynomial expansion = SymbolicPolynomial::constant(coeff);
        for (int i = 0; i < nv; ++i) {
            int e = lead_exp[i] - (i + 1 < nv ? lead_exp[i + 1] : 0);
            if (e == 0) continue;
            s_product *= SymbolicPolynomial::symbol(sym_s(i + 1), 1).pow(e);
            expansion *= elem[i + 1].pow(e);
        }
        out += s_product;
        rest -= expansion;
    }
    return out;
}

// Replace s_i by s_{N-i} for i > N/2 (and s_N by 1); valid under the ratio
// specialization where c_i = c_{N-i}.
inline SymbolicPolynomial palindromic_normalize(const SymbolicPolynomial& poly, int big_n) {
    SymbolicPolynomial out = poly;
    for (int i = big_n / 2 + 1; i <= big_n; ++i) {
        const int target = big_n - i;
        if (target == 0)
            out = out.substitute(sym_s(i), SymbolicPolynomial::constant(Rational(1)));
        else
            out = out.substitute(sym_s(i), SymbolicPolynomial::symbol(sym_s(target)));
    }
    return out;
}

}  // namespace phaseinv
