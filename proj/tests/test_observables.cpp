// Magnitude polynomials, triplet invariants, ratio characteristic
// coefficients, and the observable expression tree with JSON round trips.
#include <catch2/catch_amalgamated.hpp>

#include "phaseinv/closed_forms.hpp"
#include "phaseinv/observables.hpp"

using namespace phaseinv;

TEST_CASE("observable indices canonicalize sign") {
    CHECK(ObservableIndex::canonical({-1, 2}).r == std::vector<long>{1, -2});
    CHECK(ObservableIndex::canonical({0, -3}).r == std::vector<long>{0, 3});
    CHECK(ObservableIndex::canonical({2, 1}).r == std::vector<long>{2, 1});
}

TEST_CASE("q polynomials match their defining double sum") {
    // q_{1,1} at n = 2: (x1 y1 + x2 y2)(1/(x1 y1) + 1/(x2 y2))
    const auto q = q_poly(ObservableIndex::canonical({1, 1}), 2);
    const std::vector<Rational> pt{Rational(2), Rational(3), Rational(5), Rational(7)};
    const Rational s = Rational(2 * 5) + Rational(3 * 7);
    const Rational si = Rational(1, 2 * 5) + Rational(1, 3 * 7);
    CHECK(evaluate(q, pt) == s * si);
    // q_{a,b} = q_{-a,-b} by construction.
    CHECK(q_poly(ObservableIndex::canonical({1, -2}), 2) ==
          q_poly(ObservableIndex::canonical({-1, 2}), 2));
}

TEST_CASE("the triplet invariant matches its triple-sum definition") {
    const auto e2 = E_m_poly(2, 2);
    const std::vector<Rational> pt{Rational(2), Rational(3), Rational(5), Rational(7)};
    // sum_j x_j * sum_k y_k * sum_l 1/(x_l y_l) + reciprocal sum
    const Rational fwd = (Rational(2) + Rational(3)) * (Rational(5) + Rational(7)) *
                         (Rational(1, 10) + Rational(1, 21));
    const Rational bwd = (Rational(1, 2) + Rational(1, 3)) *
                         (Rational(1, 5) + Rational(1, 7)) * (Rational(10) + Rational(21));
    CHECK(evaluate(e2, pt) == fwd + bwd);
}

TEST_CASE("two-atom closed form is the exact zero of its defining identity") {
    const auto fr = expression_expand(two_atom_formula(), 2, 2);
    CHECK((fr.num - E_m_poly(2, 2) * fr.den).is_zero());
}

TEST_CASE("ratio characteristic coefficients are palindromic") {
    for (int n = 3; n <= 4; ++n) {
        const auto c = ratio_char_coeffs(n);
        const int big_n = n * (n - 1);
        REQUIRE(c.size() == static_cast<std::size_t>(big_n));
        for (int i = 1; i < big_n; ++i) CHECK(c[i - 1] == c[big_n - i - 1]);
        CHECK(c[big_n - 1] ==
              LaurentPolynomial::constant(VariableShape{1, n}, Rational(1)));
    }
}

TEST_CASE("e_i fold matches evaluating the invariant at (X, X^i)") {
    const int n = 3;
    const std::vector<Rational> x{Rational(2), Rational(3), Rational(5)};
    for (int i = 1; i <= 3; ++i) {
        std::vector<Rational> pt = x;
        for (const auto& v : x) pt.push_back(v.pow(i));
        CHECK(evaluate(e_i_poly(n, i), x) == evaluate(E_m_poly(n, 2), pt));
    }
}

TEST_CASE("observable expressions evaluate and round trip through JSON") {
    const auto q10 = ObservableExpression::observable(std::vector<long>{1, 0});
    const auto expr = ObservableExpression::constant(Rational(3)) * q10 * q10 -
                      ObservableExpression::constant(Rational(1, 2));
    SymbolAssignment assign;
    assign.observables[ObservableIndex::canonical({1, 0})] = Rational(5);
    CHECK(expr.evaluate(assign) == Rational(3) * Rational(25) - Rational(1, 2));
    const auto back = ObservableExpression::from_json(expr.to_json());
    CHECK(back.evaluate(assign) == expr.evaluate(assign));
}
