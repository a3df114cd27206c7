// Universal denominator D = D1 * D2 in the ratio variables z_{ij}, its
// multi-array extension E, the phi-preimage lift, exhaustive zero-pattern
// sweeps, and the symmetrization algorithm rewriting an invariant as a
// rational function of the observables q_r.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phaseinv/group.hpp"
#include "phaseinv/laurent.hpp"
#include "phaseinv/sagbi.hpp"
#include "phaseinv/spoly.hpp"
#include "phaseinv/symfun.hpp"

namespace phaseinv {

struct NotDegreeZero : std::invalid_argument {
    NotDegreeZero() : std::invalid_argument("polynomial is not degree-zero in every array") {}
};
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(std::uint64_t budget)
        : std::runtime_error("operation budget of " + std::to_string(budget) + " exceeded") {}
};

// One factor z_a z_b - 1 (minus_one) or z_a z_b - z_e, with a, b, e
// positions into lambda_set(n).
struct ZBinomial {
    int a, b, e;
    bool minus_one;
};

struct FactoredPolynomial {
    int n = 0;
    std::vector<ZBinomial> factors;

    // Expand into a polynomial in one z-array of n(n-1) variables.
    LaurentPolynomial expand() const {
        const VariableShape shape{1, n * (n - 1)};
        LaurentPolynomial out = LaurentPolynomial::constant(shape, Rational(1));
        for (const auto& f : factors) {
            LaurentPolynomial factor(shape);
            ExponentVector e(shape);
            e.at(0, f.a) += 1;
            e.at(0, f.b) += 1;
            factor.add_term(e, Rational(1));
            if (f.minus_one) {
                factor -= LaurentPolynomial::constant(shape, Rational(1));
            } else {
                ExponentVector e2(shape);
                e2.at(0, f.e) += 1;
                factor.add_term(e2, Rational(-1));
            }
            out *= factor;
        }
        return out;
    }
};

namespace detail {

// phi(z_a z_b) is again a single ratio exactly when the pair is adjacent;
// the composed Lambda index of that ratio.
inline LambdaIndex compose_adjacent(const LambdaIndex& x, const LambdaIndex& y) {
    if (x.i == y.j) return {y.i, x.j};
    return {x.i, y.j};
}

}  // namespace detail

// Whether phi annihilates the factor after relabeling by h (a permutation
// of Lambda positions; pass the identity for the factor itself).
inline bool phi_factor_zero(const LambdaTable& table, const ZBinomial& f,
                            const LambdaPermutation& h) {
    const LambdaIndex& a = table.elements()[h[f.a]];
    const LambdaIndex& b = table.elements()[h[f.b]];
    if (f.minus_one) return opposite(a, b);
    if (!adjacent(a, b)) return false;
    const LambdaIndex composed = detail::compose_adjacent(a, b);
    const LambdaIndex& e = table.elements()[h[f.e]];
    return composed.i == e.i && composed.j == e.j;
}

inline bool phi_zero(const LambdaTable& table, const FactoredPolynomial& d,
                     const LambdaPermutation& h) {
    for (const auto& f : d.factors)
        if (phi_factor_zero(table, f, h)) return true;
    return false;
}

// D = D1 * D2. D1 runs over unordered non-opposite pairs; D2 runs over
// unordered pairs that are neither adjacent nor opposite, crossed with
// every element of Lambda.
inline FactoredPolynomial build_D(int n) {
    if (n < 3) throw RequiresNAtLeast3();
    const LambdaTable table(n);
    const int sz = table.size();
    FactoredPolynomial d;
    d.n = n;
    for (int p = 0; p < sz; ++p)
        for (int q = p + 1; q < sz; ++q) {
            const LambdaIndex& x = table.elements()[p];
            const LambdaIndex& y = table.elements()[q];
            if (opposite(x, y)) continue;
            d.factors.push_back({p, q, 0, true});
            if (adjacent(x, y)) continue;
            for (int e = 0; e < sz; ++e) d.factors.push_back({p, q, e, false});
        }
    return d;
}

struct SweepReport {
    std::uint64_t checked = 0;
    std::uint64_t preserved = 0;
    std::uint64_t annihilated = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    nlohmann::json to_json() const {
        return {{"checked", checked},
                {"preserved", preserved},
                {"annihilated", annihilated},
                {"violations", violations}};
    }
};

namespace detail {

// Canonical form of a factor multiset, for exact preservation checks.
inline std::multiset<std::tuple<int, int, int, bool>> factor_multiset(
    const FactoredPolynomial& d, const LambdaPermutation& h) {
    std::multiset<std::tuple<int, int, int, bool>> out;
    for (const auto& f : d.factors) {
        int a = h[f.a], b = h[f.b];
        if (a > b) std::swap(a, b);
        out.insert({a, b, f.minus_one ? -1 : h[f.e], f.minus_one});
    }
    return out;
}

inline std::vector<LambdaPermutation> all_lambda_permutations(int sz) {
    LambdaPermutation h(sz);
    std::iota(h.begin(), h.end(), 0);
    std::vector<LambdaPermutation> out;
    do out.push_back(h);
    while (std::next_permutation(h.begin(), h.end()));
    return out;
}

}  // namespace detail

// Exhaustive zero-pattern sweep over Sym(Lambda) at n = 3: the image of D
// is preserved exactly on the embedded copy of G and annihilated elsewhere.
inline SweepReport verify_lemma_D(int n = 3) {
    if (n != 3) throw std::invalid_argument("verify_lemma_D: exhaustive sweep is n = 3 only");
    const LambdaTable table(n);
    const FactoredPolynomial d = build_D(n);
    const auto group = table.embedded_group();
    const std::set<LambdaPermutation> in_group(group.begin(), group.end());
    LambdaPermutation id(table.size());
    std::iota(id.begin(), id.end(), 0);
    const auto ref = detail::factor_multiset(d, id);

    SweepReport report;
    for (const auto& h : detail::all_lambda_permutations(table.size())) {
        ++report.checked;
        const bool zero = phi_zero(table, d, h);
        const bool member = in_group.count(h) != 0;
        if (member) {
            if (zero || detail::factor_multiset(d, h) != ref) {
                report.violations.push_back("group element fails to preserve D");
                continue;
            }
            ++report.preserved;
        } else {
            if (!zero) {
                report.violations.push_back("non-group element fails to annihilate D");
                continue;
            }
            ++report.annihilated;
        }
    }
    return report;
}

// Greedy phi-preimage: rewrite each degree-zero monomial as a product of
// ratio symbols, largest positive exponent paired with most negative.
inline LaurentPolynomial lift(const LaurentPolynomial& f) {
    const int m = f.shape().m;
    const int n = f.shape().n;
    const LambdaTable table(n);
    const VariableShape zshape{m, static_cast<int>(table.size())};
    LaurentPolynomial out(zshape);
    for (const auto& [exp, coeff] : f.terms()) {
        ExponentVector zexp(zshape);
        for (int h = 0; h < m; ++h) {
            std::vector<int> rem(n);
            int sum = 0;
            for (int j = 0; j < n; ++j) sum += rem[j] = exp.at(h, j);
            if (sum != 0) throw NotDegreeZero();
            for (;;) {
                const auto hi = std::max_element(rem.begin(), rem.end());
                if (*hi == 0) break;
                const auto lo = std::min_element(rem.begin(), rem.end());
                const int k = std::min(*hi, -*lo);
                const int pos = table.position(LambdaIndex{
                    static_cast<int>(hi - rem.begin()), static_cast<int>(lo - rem.begin())});
                zexp.at(h, pos) += k;
                *hi -= k;
                *lo += k;
            }
        }
        out.add_term(zexp, coeff);
    }
    return out;
}

// phi: z_{h,(i,j)} -> x_{h,i} / x_{h,j}.
inline LaurentPolynomial phi_image(const LaurentPolynomial& zpoly, int n) {
    const int m = zpoly.shape().m;
    const LambdaTable table(n);
    if (zpoly.shape().n != table.size())
        throw std::invalid_argument("phi_image: shape does not match Lambda");
    const VariableShape xshape{m, n};
    LaurentPolynomial out(xshape);
    for (const auto& [exp, coeff] : zpoly.terms()) {
        ExponentVector xexp(xshape);
        for (int h = 0; h < m; ++h)
            for (int p = 0; p < table.size(); ++p) {
                const int e = exp.at(h, p);
                if (e == 0) continue;
                xexp.at(h, table.elements()[p].i) += e;
                xexp.at(h, table.elements()[p].j) -= e;
            }
        out.add_term(xexp, coeff);
    }
    return out;
}

// Rewrite an invariant f in k[X^{+-1}]_0^G as a rational function of the
// power-sum observables q_r, by symmetrizing D * lift(f) over Sym(Lambda)
// and normalizing by the symmetrization of D itself.
struct QFraction {
    SymbolicPolynomial numerator;    // in symbols q1..qN
    SymbolicPolynomial denominator;
};

inline QFraction algorithm31(const LaurentPolynomial& f,
                             std::uint64_t budget = 2'000'000) {
    if (f.shape().m != 1) throw std::invalid_argument("algorithm31: single array required");
    const int n = f.shape().n;
    if (n < 2 || n > 3)
        throw std::invalid_argument("algorithm31: n = 2 (full) or n = 3 (budgeted) only");
    if (!is_invariant(f)) throw NotInvariant();

    const LambdaTable table(n);
    const int big_n = table.size();
    std::uint64_t ops = 0;
    auto spend = [&](std::uint64_t k) {
        ops += k;
        if (ops > budget) throw BudgetExceeded(budget);
    };

    // D * lift(f) and D itself, expanded in the z-variables (D is the
    // empty product at n = 2; the factor expansion is what the budget
    // guards against at n = 3).
    const VariableShape zshape{1, big_n};
    LaurentPolynomial df = lift(f);
    LaurentPolynomial dpoly = LaurentPolynomial::constant(zshape, Rational(1));
    if (n >= 3) {
        for (const auto& fac : build_D(n).factors) {
            LaurentPolynomial factor(zshape);
            ExponentVector e(zshape);
            e.at(0, fac.a) += 1;
            e.at(0, fac.b) += 1;
            factor.add_term(e, Rational(1));
            if (fac.minus_one) {
                factor -= LaurentPolynomial::constant(zshape, Rational(1));
            } else {
                ExponentVector e2(zshape);
                e2.at(0, fac.e) += 1;
                factor.add_term(e2, Rational(-1));
            }
            spend(2 * (df.terms().size() + dpoly.terms().size()));
            df *= factor;
            dpoly *= factor;
        }
    }

    // Symmetrize over Sym(Lambda), interning monomial images.
    auto symmetrize = [&](const LaurentPolynomial& g) {
        SymbolicPolynomial acc;
        LambdaPermutation h(big_n);
        std::iota(h.begin(), h.end(), 0);
        do {
            spend(g.terms().size());
            for (const auto& [exp, coeff] : g.terms()) {
                SymMonomial mono;
                for (int p = 0; p < big_n; ++p)
                    if (exp.at(0, p) != 0) mono["z" + std::to_string(h[p])] += exp.at(0, p);
                acc += SymbolicPolynomial::monomial(std::move(mono), coeff);
            }
        } while (std::next_permutation(h.begin(), h.end()));
        return acc;
    };
    // Rewrite a Sym(Lambda)-symmetric z-polynomial in the s_i, fold the
    // palindromic half, and substitute the observable values of the
    // elementary symmetric functions of the ratios.
    std::vector<std::string> zvars;
    for (int p = 0; p < big_n; ++p) zvars.push_back("z" + std::to_string(p));
    auto rewrite = [&](const SymbolicPolynomial& g) {
        SymbolicPolynomial s = palindromic_normalize(decompose_in_elementary(g, zvars), big_n);
        for (int i = big_n; i >= 1; --i) {
            SymbolicPolynomial repl = newton_e_from_p(i, big_n);
            for (int r = i; r >= 1; --r)
                repl = repl.substitute(
                    sym_p(r), SymbolicPolynomial::symbol("q" + std::to_string(r)) -
                                  SymbolicPolynomial::constant(Rational(n)));
            s = s.substitute(sym_s(i), repl);
        }
        return s;
    };
    return {rewrite(symmetrize(df)), rewrite(symmetrize(dpoly))};
}

// The m-array extension E = D(z_1)...D(z_m) * E1, with E1's factors
// t - sum_p z_{1,p} z_{2,h(p)} indexed by the maps h = embedded g, g != 1.
struct ExtendedDenominator {
    int n = 0;
    int m = 0;
    FactoredPolynomial d;                  // applied to each array
    std::vector<LambdaPermutation> e1;     // one factor per non-identity map
};

inline ExtendedDenominator build_E(int n, int m) {
    if (m != 2) throw std::invalid_argument("build_E: only m = 2 is implemented");
    ExtendedDenominator e;
    e.n = n;
    e.m = m;
    e.d = build_D(n);
    const LambdaTable table(n);
    LambdaPermutation id(table.size());
    std::iota(id.begin(), id.end(), 0);
    for (const auto& h : table.embedded_group())
        if (h != id) e.e1.push_back(h);
    return e;
}

namespace detail {

inline LambdaPermutation compose_perm(const LambdaPermutation& a, const LambdaPermutation& b) {
    LambdaPermutation out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
    return out;
}

}  // namespace detail

// phi of the (sigma1, sigma2)-relabeled E1 factor for map h: the factor is
// t - sum_p z_{1,sigma1(p)} z_{2,sigma2(h(p))}, and phi(t) is the image of
// the diagonal sum; the two coincide exactly when sigma2 . h = sigma1.
inline bool e1_factor_zero(const LambdaPermutation& h, const LambdaPermutation& sigma1,
                           const LambdaPermutation& sigma2) {
    return detail::compose_perm(sigma2, h) == sigma1;
}

inline SweepReport verify_E_property(int n = 3, int m = 2) {
    if (n != 3 || m != 2)
        throw std::invalid_argument("verify_E_property: exhaustive sweep is (3, 2) only");
    const LambdaTable table(n);
    const ExtendedDenominator e = build_E(n, m);
    const auto perms = detail::all_lambda_permutations(table.size());
    const auto group = table.embedded_group();
    const std::set<LambdaPermutation> in_group(group.begin(), group.end());

    // D-part zero-ness depends on each sigma alone; evaluate factor-wise
    // once per permutation.
    std::vector<char> d_zero(perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i)
        d_zero[i] = phi_zero(table, e.d, perms[i]) ? 1 : 0;

    SweepReport report;
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j) {
            ++report.checked;
            bool zero = d_zero[i] || d_zero[j];
            if (!zero)
                for (const auto& h : e.e1)
                    if (e1_factor_zero(h, perms[i], perms[j])) {
                        zero = true;
                        break;
                    }
            const bool diagonal_group = perms[i] == perms[j] && in_group.count(perms[i]);
            if (diagonal_group == !zero) {
                (zero ? report.annihilated : report.preserved)++;
            } else {
                report.violations.push_back("zero pattern mismatch at pair (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    return report;
}

}  // namespace phaseinv
