// Classical closed-form triplet formulas for two and three atoms, used as
// cross-checks for the emitted reduction formulas.
#pragma once

#include "phaseinv/expression.hpp"

namespace phaseinv {

// Two atoms: E_2(X, Y) = 2 (q_{1,0} + q_{0,1} + q_{1,1}) - 8.
inline ObservableExpression two_atom_formula() {
    auto q = [](long a, long b) {
        return ObservableExpression::observable(std::vector<long>{a, b});
    };
    return ObservableExpression::constant(Rational(2)) * (q(1, 0) + q(0, 1) + q(1, 1)) -
           ObservableExpression::constant(Rational(8));
}

// Three atoms: E_2(X, Y) = N / D as a closed-form rational expression.
struct ClassicFraction {
    ObservableExpression numerator;
    ObservableExpression denominator;
};

inline ClassicFraction three_atom_formula() {
    auto q = [](long a, long b) {
        return ObservableExpression::observable(std::vector<long>{a, b});
    };
    auto c = [](long v) { return ObservableExpression::constant(Rational(v)); };
    // The quadratic part in D is 2D^2 - 19D + 60.  A widely reprinted
    // variant reads D^2 - 31D + 135; it already fails when all atoms
    // coincide (N = 507 there, while E_2 * D = 1296), whereas the form
    // below is an exact identity.
    ObservableExpression d = q(0, 1) + q(1, 0) + q(1, 1) - c(3);
    ObservableExpression n =
        c(60) - c(19) * d + c(2) * ObservableExpression::pow(d, 2) +
        c(2) * (q(1, 0) * q(0, 1) + q(1, 0) * q(1, 1) + q(0, 1) * q(1, 1)) +
        (q(0, 1) * q(2, 1) + q(1, 0) * q(1, 2) + q(1, -1) * q(1, 1)) -
        c(5) * (q(1, 2) + q(2, 1) + q(1, -1)) - c(2) * (q(0, 2) + q(2, 2) + q(2, 0));
    return {n, d};
}

}  // namespace phaseinv
