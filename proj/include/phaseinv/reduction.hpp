// Reduction of the two-array invariant E_2(X, Y) to single-array
// observables: the R matrix and lambda linear system, numeric evaluation
// from magnitudes, symbolic formula emission, and the phase cosine.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phaseinv/expression.hpp"
#include "phaseinv/matrix.hpp"
#include "phaseinv/observables.hpp"
#include "phaseinv/sagbi.hpp"

namespace phaseinv {

struct SingularR : std::runtime_error {
    SingularR() : std::runtime_error("reduction matrix R is singular at this point") {}
};
struct MissingObservable : std::runtime_error {
    explicit MissingObservable(std::vector<ObservableIndex> missing_)
        : std::runtime_error(describe(missing_)), missing(std::move(missing_)) {}
    std::vector<ObservableIndex> missing;

private:
    static std::string describe(const std::vector<ObservableIndex>& v) {
        std::string s = "missing observables:";
        for (const auto& i : v) s += " " + i.str();
        return s;
    }
};
struct ZeroMagnitude : std::domain_error {
    ZeroMagnitude() : std::domain_error("triplet phase undefined at zero magnitude") {}
};

using QValues = std::map<ObservableIndex, Rational>;

namespace detail {

inline Rational q_lookup(const QValues& values, std::vector<long> index,
                         std::vector<ObservableIndex>* missing) {
    const ObservableIndex idx = ObservableIndex::canonical(std::move(index));
    if (auto it = values.find(idx); it != values.end()) return it->second;
    if (missing) missing->push_back(idx);
    return Rational(0);
}

}  // namespace detail

struct ReductionSystem {
    int n = 0;
    int big_n = 0;  // N = n(n-1); offsets run -N/2 .. N/2-1

    explicit ReductionSystem(int n_) : n(n_), big_n(n_ * (n_ - 1)) {
        if (n < 2) throw std::invalid_argument("ReductionSystem: n must be >= 2");
    }

    // Value of q_r with the conventions q_0 = n^2, q_{-r} = q_r.
    Rational q_r(const QValues& values, int r, std::vector<ObservableIndex>* missing) const {
        if (r == 0) return Rational(n) * Rational(n);
        return detail::q_lookup(values, {std::labs(r), 0}, missing);
    }

    // Numeric R (entry (j, i) = q_{i+j} - n over the offset range) and
    // rhs_s = q_{s,1} - n.
    RationalMatrix numeric_R(const QValues& values) const {
        std::vector<ObservableIndex> missing;
        RationalMatrix r(big_n, big_n);
        for (int row = 0; row < big_n; ++row)
            for (int col = 0; col < big_n; ++col) {
                const int s = row - big_n / 2;
                const int i = col - big_n / 2;
                r(row, col) = q_r(values, i + s, &missing) - Rational(n);
            }
        if (!missing.empty()) throw MissingObservable(std::move(missing));
        return r;
    }

    std::vector<Rational> numeric_rhs(const QValues& values) const {
        std::vector<ObservableIndex> missing;
        std::vector<Rational> rhs(big_n);
        for (int row = 0; row < big_n; ++row) {
            const int s = row - big_n / 2;
            rhs[row] = detail::q_lookup(values, {s, 1}, &missing) - Rational(n);
        }
        if (!missing.empty()) throw MissingObservable(std::move(missing));
        return rhs;
    }
};

// lambda_{-N/2} .. lambda_{N/2-1} with R lambda = rhs, exact.
inline std::vector<Rational> solve_lambdas(int n, const QValues& values) {
    const ReductionSystem sys(n);
    try {
        return solve_linear(sys.numeric_R(values), sys.numeric_rhs(values));
    } catch (const SingularMatrix&) {
        throw SingularR();
    }
}

// The single-array identities e_i = (polynomial in q) / (polynomial in q),
// recomputed by subduction each run; index 0 holds e_0 = 2n q_1.
struct EIdentity {
    SymbolicPolynomial num;
    SymbolicPolynomial den;  // 1 except for n = 4, where p is eliminated
};

inline const std::vector<EIdentity>& e_identities(int n) {
    static std::map<int, std::vector<EIdentity>> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    if (n < 2 || n > 4) throw UnsupportedN();

    const int big_n = n * (n - 1);
    const SymbolicPolynomial one = SymbolicPolynomial::constant(Rational(1));
    std::vector<EIdentity> out;
    out.push_back({SymbolicPolynomial::symbol("q1") * Rational(2 * n), one});

    const SagbiBasis basis(n);
    PElimination pe;
    if (n == 4) pe = eliminate_p();
    for (int i = 1; i <= big_n / 2 - 1; ++i) {
        SymbolicPolynomial in_c = subduct(e_i_poly(n, i), basis).expression;
        if (n < 4) {
            out.push_back({c_to_q(in_c, n), one});
            continue;
        }
        // Replace p by its rational expression in c_1..c_4 and clear the
        // common denominator.
        auto by_p = in_c.collect("p");
        const int top = by_p.empty() ? 0 : by_p.rbegin()->first;
        SymbolicPolynomial num;
        for (int k = 0; k <= top; ++k) {
            if (!by_p.count(k)) continue;
            num += by_p[k] * pe.numerator.pow(k) * pe.denominator.pow(top - k);
        }
        out.push_back({c_to_q(num, n), c_to_q(pe.denominator.pow(top), n)});
    }
    return cache.emplace(n, std::move(out)).first->second;
}

namespace detail {

inline Rational eval_q_spoly(const SymbolicPolynomial& s, const ReductionSystem& sys,
                             const QValues& values) {
    std::vector<ObservableIndex> missing;
    std::map<std::string, Rational> assign;
    for (const auto& name : s.symbols())
        assign[name] = sys.q_r(values, std::stoi(name.substr(1)), &missing);
    if (!missing.empty()) throw MissingObservable(std::move(missing));
    return s.evaluate(assign);
}

}  // namespace detail

// E_2(X, Y) from observable magnitudes: sum_i lambda_i e_i plus the
// correction (1 - sum lambda_i) * 2 q_1 for the component of E_2 constant
// in the off-diagonal Y-ratios (the z_ii = 1 convention).
inline Rational e2_from_values(int n, const QValues& values) {
    const ReductionSystem sys(n);
    const auto lambdas = solve_lambdas(n, values);
    const auto& ids = e_identities(n);

    Rational total(0);
    Rational lambda_sum(0);
    for (int row = 0; row < sys.big_n; ++row) {
        const int i = row - sys.big_n / 2;
        const int idx = i >= 0 ? i : -1 - i;  // e_i = e_{-1-i}
        const Rational num = detail::eval_q_spoly(ids[idx].num, sys, values);
        const Rational den = detail::eval_q_spoly(ids[idx].den, sys, values);
        if (den.is_zero()) throw DenominatorVanishes();
        total += lambdas[row] * num / den;
        lambda_sum += lambdas[row];
    }
    std::vector<ObservableIndex> missing;
    const Rational q1 = sys.q_r(values, 1, &missing);
    if (!missing.empty()) throw MissingObservable(std::move(missing));
    total += (Rational(1) - lambda_sum) * Rational(2) * q1;
    return total;
}

struct TripletFormula {
    int n = 0;
    std::vector<ObservableIndex> required_observables;
    ObservableExpression expression;

    nlohmann::json to_json() const {
        nlohmann::json req = nlohmann::json::array();
        for (const auto& idx : required_observables) req.push_back(idx.r);
        return {{"n", n}, {"required_observables", req}, {"expression", expression.to_json()}};
    }
};

namespace detail {

// Determinants of R and of R with one column replaced by the rhs, as a
// shared expression DAG: expansion along rows with minors memoized by the
// remaining-column mask. Minors avoiding the replaced column are shared
// with the plain determinant.
class CramerExpander {
public:
    CramerExpander(std::vector<std::vector<ObservableExpression>> columns)
        : columns_(std::move(columns)), size_(static_cast<int>(columns_.size())) {}

    ObservableExpression det() { return minor_expr(full_mask(), -1); }
    ObservableExpression det_replaced(int col, const std::vector<ObservableExpression>& repl) {
        replacement_ = &repl;
        ObservableExpression out = minor_expr(full_mask(), col);
        replacement_ = nullptr;
        return out;
    }

private:
    std::uint32_t full_mask() const { return (1u << size_) - 1; }

    const ObservableExpression& entry(int row, int col, int replaced) const {
        return col == replaced ? (*replacement_)[row] : columns_[col][row];
    }

    ObservableExpression minor_expr(std::uint32_t mask, int replaced) {
        const bool uses_repl = replaced >= 0 && (mask & (1u << replaced));
        auto& memo = uses_repl ? repl_memo_[replaced] : plain_memo_;
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        const int row = size_ - __builtin_popcount(mask);
        std::vector<ObservableExpression> terms;
        int parity = 0;
        for (int col = 0; col < size_; ++col) {
            if (!(mask & (1u << col))) continue;
            const std::uint32_t rest = mask & ~(1u << col);
            ObservableExpression term =
                rest == 0
                    ? entry(row, col, uses_repl ? replaced : -1)
                    : entry(row, col, uses_repl ? replaced : -1) * minor_expr(rest, replaced);
            terms.push_back(parity % 2 == 0 ? term : ObservableExpression::neg(term));
            ++parity;
        }
        ObservableExpression out = terms.size() == 1 ? terms[0]
                                                     : ObservableExpression::add(std::move(terms));
        memo.emplace(mask, out);
        return out;
    }

    std::vector<std::vector<ObservableExpression>> columns_;
    int size_;
    const std::vector<ObservableExpression>* replacement_ = nullptr;
    std::map<std::uint32_t, ObservableExpression> plain_memo_;
    std::map<int, std::map<std::uint32_t, ObservableExpression>> repl_memo_;
};

}  // namespace detail

// Symbolic row vector (e_{-N/2}, .., e_{N/2-1}) with the e_i given by their
// q-expressions; exposed separately because the printed reference formulas
// are stated through it.
inline std::vector<ObservableExpression> formula_row_vector(int n) {
    const int big_n = n * (n - 1);
    const auto& ids = e_identities(n);
    auto as_expr = [&](const EIdentity& id) {
        ObservableExpression num = spoly_to_expression(
            id.num, [](const std::string& s) { return q_symbol_expression(s, 2); });
        if (id.den.is_constant() && id.den.constant_value() == Rational(1)) return num;
        ObservableExpression den = spoly_to_expression(
            id.den, [](const std::string& s) { return q_symbol_expression(s, 2); });
        return ObservableExpression::div(num, den);
    };
    std::vector<ObservableExpression> row;
    for (int col = 0; col < big_n; ++col) {
        const int i = col - big_n / 2;
        row.push_back(as_expr(ids[i >= 0 ? i : -1 - i]));
    }
    return row;
}

inline TripletFormula emit_formula(int n) {
    if (n < 2 || n > 4) throw UnsupportedN();
    const int big_n = n * (n - 1);

    auto q_obs = [](long a, long b) {
        return ObservableExpression::observable(std::vector<long>{a, b});
    };
    // Columns of R: entry (row, col) = q_{i+s} - n.
    std::vector<std::vector<ObservableExpression>> columns(big_n);
    for (int col = 0; col < big_n; ++col)
        for (int row = 0; row < big_n; ++row) {
            const int r = (col - big_n / 2) + (row - big_n / 2);
            ObservableExpression q =
                r == 0 ? ObservableExpression::constant(Rational(n) * Rational(n))
                       : q_obs(std::labs(r), 0);
            columns[col].push_back(q - ObservableExpression::constant(Rational(n)));
        }
    std::vector<ObservableExpression> rhs;
    for (int row = 0; row < big_n; ++row)
        rhs.push_back(q_obs(row - big_n / 2, 1) - ObservableExpression::constant(Rational(n)));

    detail::CramerExpander cramer(columns);
    const ObservableExpression det = cramer.det();
    std::vector<ObservableExpression> numerators;  // lambda_i = numerators[i] / det
    for (int col = 0; col < big_n; ++col) numerators.push_back(cramer.det_replaced(col, rhs));

    // E_2 = (sum_i row_i num_i + (det - sum_i num_i) 2 q_1) / det.
    const auto row = formula_row_vector(n);
    std::vector<ObservableExpression> terms;
    for (int col = 0; col < big_n; ++col) terms.push_back(row[col] * numerators[col]);
    ObservableExpression num_sum =
        numerators.size() == 1 ? numerators[0] : ObservableExpression::add(numerators);
    terms.push_back((det - num_sum) * ObservableExpression::constant(Rational(2)) *
                    q_obs(1, 0));
    TripletFormula out;
    out.n = n;
    out.expression = ObservableExpression::div(ObservableExpression::add(std::move(terms)), det);
    for (int r = 1; r <= big_n; ++r)
        out.required_observables.push_back(ObservableIndex::canonical({r, 0}));
    for (int s = -big_n / 2; s <= big_n / 2 - 1; ++s)
        out.required_observables.push_back(ObservableIndex::canonical({s, 1}));
    return out;
}

// cos(phi) = e2 / (2 |E_1| |E_2| |E_3|), exact.
inline Rational cos_triplet_phase(const Rational& m1, const Rational& m2, const Rational& m3,
                                  const Rational& e2_value) {
    if (m1.is_zero() || m2.is_zero() || m3.is_zero()) throw ZeroMagnitude();
    return e2_value / (Rational(2) * m1 * m2 * m3);
}

// Float pipeline variant: clamps to [-1, 1]; *clamp_excess reports how far
// outside the raw value fell (0 when already in range).
inline double cos_triplet_phase(double m1, double m2, double m3, double e2_value,
                                double* clamp_excess = nullptr) {
    if (m1 == 0 || m2 == 0 || m3 == 0) throw ZeroMagnitude();
    double v = e2_value / (2 * m1 * m2 * m3);
    double excess = 0;
    if (v > 1) {
        excess = v - 1;
        v = 1;
    } else if (v < -1) {
        excess = -1 - v;
        v = -1;
    }
    if (clamp_excess) *clamp_excess = excess;
    return v;
}

}  // namespace phaseinv
