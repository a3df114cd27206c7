// The universal denominator over the pair variables, its zero pattern under
// the group action, lifting, and the symmetrization rewriting algorithm.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phaseinv/univdenom.hpp"

using namespace phaseinv;

TEST_CASE("denominator factor counts at n = 3") {
    const auto d = build_D(3);
    int minus_one = 0, shifted = 0;
    for (const auto& f : d.factors) (f.minus_one ? minus_one : shifted)++;
    // 15 unordered pairs - 3 opposite = 12 binomial factors; the pairs that
    // are neither adjacent nor opposite (3 of them) each contribute one
    // factor per pair variable: 3 * 12 ... at n = 3 there are 6 variables.
    CHECK(minus_one == 12);
    CHECK(shifted == 36);
    CHECK_THROWS_AS(build_D(2), RequiresNAtLeast3);
}

TEST_CASE("group elements preserve the denominator, everything else kills it") {
    const auto report = verify_lemma_D(3);
    CHECK(report.ok());
    CHECK(report.checked == 720);
    CHECK(report.preserved == 12);
    CHECK(report.annihilated == 708);
    CHECK(report.violations.empty());
}

TEST_CASE("lifting splits ratios into numerator and denominator variables") {
    const VariableShape shape{1, 3};
    const LaurentPolynomial f =
        parse_laurent("x1*x2^-1 + x2*x1^-1 + x1*x3^-1 + x3*x1^-1 + x2*x3^-1 + x3*x2^-1",
                      shape);
    const auto lifted = lift(f);
    CHECK(phi_image(lifted, 3) == f);
    // Degree-zero inputs only.
    CHECK_THROWS_AS(lift(parse_laurent("x1", shape)), NotDegreeZero);
}

TEST_CASE("symmetrization rewriting at n = 2: hand-checked outputs") {
    const VariableShape shape{1, 2};
    const LaurentPolynomial f = parse_laurent("x1*x2^-1 + x2*x1^-1", shape);
    const auto qf = algorithm31(f);
    CHECK(qf.numerator == parse_spoly("2*q1 - 4"));
    CHECK(qf.denominator == parse_spoly("2"));
    const LaurentPolynomial f2 = parse_laurent("x1^2*x2^-2 + x2^2*x1^-2", shape);
    const auto qf2 = algorithm31(f2);
    CHECK(qf2.numerator == parse_spoly("2*q1^2 - 8*q1 + 4"));
    CHECK(qf2.denominator == parse_spoly("2"));
}

TEST_CASE("symmetrization rejects non-invariants and respects the budget") {
    const VariableShape shape{1, 2};
    CHECK_THROWS_AS(algorithm31(parse_laurent("x1*x2^-1", shape)), NotInvariant);
    const LaurentPolynomial f = parse_laurent("x1*x2^-1 + x2*x1^-1", shape);
    CHECK_THROWS_AS(algorithm31(f, 3), BudgetExceeded);
}

TEST_CASE("symmetrization output agrees with the input as a function") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(1, 30), den(1, 7);
    const VariableShape shape{1, 2};
    const LaurentPolynomial f =
        reynolds(parse_laurent("x1^3*x2^-3 + 2*x1*x2^-1", shape));
    const auto qf = algorithm31(f);
    for (int t = 0; t < 20; ++t) {
        const std::vector<Rational> pt{Rational(num(rng), den(rng)),
                                       Rational(num(rng), den(rng)) + Rational(40)};
        std::map<std::string, Rational> assign;
        for (const auto& sym : qf.numerator.symbols())
            assign[sym] = evaluate(q_poly({std::stol(sym.substr(1))}, 2), pt);
        for (const auto& sym : qf.denominator.symbols())
            assign[sym] = evaluate(q_poly({std::stol(sym.substr(1))}, 2), pt);
        CHECK(qf.numerator.evaluate(assign) / qf.denominator.evaluate(assign) ==
              evaluate(f, pt));
    }
}
