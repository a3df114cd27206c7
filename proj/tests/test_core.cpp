// Exact arithmetic, Laurent polynomials, linear algebra, and cyclotomic
// integers: the foundation everything else builds on.
#include <catch2/catch_amalgamated.hpp>

#include "phaseinv/cyclotomic.hpp"
#include "phaseinv/laurent.hpp"
#include "phaseinv/matrix.hpp"
#include "phaseinv/rational.hpp"

using namespace phaseinv;

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(7, 3).pow(-2) == Rational(9, 49));
    CHECK(Rational(0).is_zero());
    CHECK(Rational(22, 7).str() == "22/7");
}

TEST_CASE("from_double is exact on representable values") {
    CHECK(Rational::from_double(0.25) == Rational(1, 4));
    CHECK(Rational::from_double(3.0) == Rational(3));
    // 0.1 is not 1/10 in binary; the conversion must preserve that.
    CHECK(Rational::from_double(0.1) != Rational(1, 10));
    CHECK(Rational::from_double(0.1).to_double() == 0.1);
    CHECK_THROWS(Rational::from_double(1.0 / 0.0));
}

TEST_CASE("linear solve agrees with the 2x2 cofactor formula") {
    RationalMatrix a(2, 2);
    a(0, 0) = Rational(3);
    a(0, 1) = Rational(1, 2);
    a(1, 0) = Rational(-1);
    a(1, 1) = Rational(5, 3);
    const std::vector<Rational> b{Rational(7), Rational(2, 5)};
    const auto x = solve_linear(a, b);
    const Rational det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    CHECK(x[0] == (b[0] * a(1, 1) - a(0, 1) * b[1]) / det);
    CHECK(x[1] == (a(0, 0) * b[1] - b[0] * a(1, 0)) / det);

    RationalMatrix s(2, 2);
    s(0, 0) = Rational(1);
    s(0, 1) = Rational(2);
    s(1, 0) = Rational(2);
    s(1, 1) = Rational(4);
    CHECK_THROWS_AS(solve_linear(s, b), SingularMatrix);
}

TEST_CASE("laurent polynomials multiply and evaluate correctly") {
    const VariableShape shape{1, 2};
    // f = x1/x2 + x2/x1
    const LaurentPolynomial f = parse_laurent("x1*x2^-1 + x2*x1^-1", shape);
    const std::vector<Rational> pt{Rational(3), Rational(5)};
    CHECK(evaluate(f, pt) == Rational(3, 5) + Rational(5, 3));
    CHECK(evaluate(f * f, pt) == evaluate(f, pt) * evaluate(f, pt));
    CHECK((f - f).is_zero());
    CHECK(parse_laurent(format_laurent(f), shape) == f);
}

TEST_CASE("initial exponent uses lexicographic order on the flat vector") {
    const VariableShape shape{1, 3};
    const LaurentPolynomial f = parse_laurent("x1^2*x2^-1*x3^-1 + x1*x3^-1", shape);
    const auto init = f.initial_exponent();
    CHECK(init.at(0, 0) == 2);
    CHECK(init.at(0, 1) == -1);
    CHECK(init.at(0, 2) == -1);
}

TEST_CASE("fold_arrays takes E-style polynomials to one variable set") {
    const VariableShape shape{2, 2};
    const LaurentPolynomial f = parse_laurent("x1_1*x2_1 + x1_2*x2_2^-1", shape);
    const LaurentPolynomial g = fold_arrays(f, {1, 2});
    // x1 y1 -> x1^{1+2}; x2 y2^{-1} -> x2^{1-2}
    CHECK(g == parse_laurent("x1^3 + x2^-1", VariableShape{1, 2}));
}

TEST_CASE("cyclotomic integers reduce modulo the primitive relation") {
    // In Z[t]/Phi_5, 1 + t + t^2 + t^3 + t^4 = 0.
    CyclotomicInt s(5);
    for (long e = 0; e < 5; ++e) s += CyclotomicInt::monomial(5, e);
    CHECK(is_zero_mod_phi(s));
    CHECK(!is_zero_mod_phi(CyclotomicInt::constant(5, 1)));
    // t^5 = 1 in Z[t]/(t^5 - 1).
    CHECK(CyclotomicInt::monomial(5, 7) == CyclotomicInt::monomial(5, 2));
    CHECK_THROWS_AS(CyclotomicInt::constant(3, 1) + CyclotomicInt::constant(5, 1),
                    OrderMismatch);
}
