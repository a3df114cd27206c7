// The distinguished generating set for degree-zero invariants, the initial
// exponent semigroup, subduction, and the elimination of the extra
// four-variable generator.
#include <catch2/catch_amalgamated.hpp>

#include "phaseinv/sagbi.hpp"

using namespace phaseinv;

namespace {
ExponentVector exps(const std::vector<int>& v) {
    const VariableShape shape{1, static_cast<int>(v.size())};
    ExponentVector e(shape);
    for (std::size_t j = 0; j < v.size(); ++j) e.at(0, static_cast<int>(j)) = v[j];
    return e;
}
}  // namespace

TEST_CASE("semigroup membership: zero sum, weakly decreasing, lex condition") {
    CHECK(in_semigroup(exps({1, 0, -1})));
    CHECK(in_semigroup(exps({2, -1, -1})));
    CHECK(in_semigroup(exps({1, 1, -1, -1})));
    CHECK(in_semigroup(exps({3, -1, -1, -1})));
    CHECK(!in_semigroup(exps({1, 0, 0})));     // nonzero sum
    CHECK(!in_semigroup(exps({0, 1, -1})));    // not weakly decreasing
    CHECK(!in_semigroup(exps({1, 1, -2})));    // fails the lex comparison
}

TEST_CASE("generator initial exponents") {
    const SagbiBasis b3(3);
    CHECK(b3.generator("c1").initial == exps({1, 0, -1}));
    CHECK(b3.generator("c2").initial == exps({2, -1, -1}));
    const SagbiBasis b4(4);
    CHECK(b4.generator("c1").initial == exps({1, 0, 0, -1}));
    CHECK(b4.generator("c2").initial == exps({2, 0, -1, -1}));
    CHECK(b4.generator("c3").initial == exps({3, -1, -1, -1}));
    CHECK(b4.generator("p").initial == exps({1, 1, -1, -1}));
}

TEST_CASE("closed-form decomposition reproduces semigroup elements") {
    const SagbiBasis b3(3);
    auto check_roundtrip = [](const SagbiBasis& b, const ExponentVector& a) {
        const auto mult = b.decompose_initial(a);
        ExponentVector acc(a.shape());
        for (const auto& [name, k] : mult) {
            const auto& init = b.generator(name).initial;
            for (int j = 0; j < a.shape().n; ++j) acc.at(0, j) += k * init.at(0, j);
        }
        CHECK(acc == a);
    };
    check_roundtrip(b3, exps({3, -1, -2}));
    check_roundtrip(b3, exps({4, -2, -2}));
    const SagbiBasis b4(4);
    check_roundtrip(b4, exps({2, 1, -1, -2}));
    check_roundtrip(b4, exps({3, 0, -1, -2}));
    check_roundtrip(b4, exps({6, -2, -2, -2}));
    CHECK(b4.decompose_initial(exps({2, 1, -1, -2})) ==
          std::map<std::string, int>{{"c1", 1}, {"p", 1}});
    CHECK_THROWS_AS(b3.decompose_initial(exps({1, 1, -2})), NotInSemigroup);
}

TEST_CASE("subduction of the three-variable folds matches hand-checked forms") {
    CHECK(subduct(e_i_poly(3, 1), 3).expression ==
          parse_spoly("2*c1^2 + 2*c1 - 2*c2"));
    CHECK(subduct(e_i_poly(3, 2), 3).expression ==
          parse_spoly("2*c1^3 + 5*c1^2 - 5*c1*c2 + 9*c1 - 12*c2 + 18"));
}

TEST_CASE("subduction result re-expands to the input") {
    for (int n = 2; n <= 4; ++n) {
        const SagbiBasis basis(n);
        const LaurentPolynomial f = e_i_poly(n, 2);
        const auto res = subduct(f, basis);
        std::map<std::string, LaurentPolynomial> assign;
        for (const auto& sym : res.expression.symbols())
            assign.emplace(sym, basis.generator(sym).poly);
        const auto back = res.expression.evaluate_ring<LaurentPolynomial>(
            assign, LaurentPolynomial(f.shape()),
            LaurentPolynomial::constant(f.shape(), Rational(1)));
        CHECK(back == f);
    }
}

TEST_CASE("four-variable relations and the p elimination, symbol for symbol") {
    const auto rel = n4_relations();
    CHECK(rel.c2_squared ==
          parse_spoly("2*c1^2*p - 16*c1^2 - 8*c1*c2 - c1*p^2 + 15*c1*p - 48*c1 + "
                      "3*c2*p - 12*c2 + c3*p - 2*p^2 + 18*p - 36"));
    CHECK(rel.c4 ==
          parse_spoly("3*c1^2 + c1*c2 - 3*c1*p + 17*c1 + c2 - 3*c3 + p^2 - 10*p + 21"));
    CHECK(rel.c5 ==
          parse_spoly("c1^3 - 6*c1^2 - 5*c1*c2 + 7*c1*p - 38*c1 + c2*p - 7*c2 + 6*c3 - "
                      "2*p^2 + 20*p - 42"));
    CHECK(rel.c6 ==
          parse_spoly("-2*c1^3 + c1^2*p + 6*c1*c2 - 5*c1*p + 27*c1 - 2*c2*p + 9*c2 - "
                      "7*c3 + 2*p^2 - 18*p + 34"));
    const auto pe = eliminate_p(rel);
    CHECK(pe.numerator ==
          parse_spoly("6 + 7*c1 + 7*c1^2 + 3*c1^3 - 10*c2 - 5*c1*c2 + c1^2*c2 - c2^2 - "
                      "6*c3 - 3*c1*c3 - 2*c4 - c1*c4"));
    CHECK(pe.denominator == parse_spoly("2 + c1 + c1^2 - 3*c2 - c3"));
}

TEST_CASE("the p elimination is numerically consistent with the generator") {
    const SagbiBasis b4(4);
    const auto pe = eliminate_p();
    const std::vector<Rational> pt{Rational(2), Rational(3), Rational(5), Rational(7, 2)};
    std::map<std::string, Rational> assign;
    for (const auto& g : b4.generators()) assign[g.name] = evaluate(g.poly, pt);
    // c4 at this point, from the full coefficient list.
    assign["c4"] = evaluate(ratio_char_coeffs(4)[3], pt);
    CHECK(pe.numerator.evaluate(assign) / pe.denominator.evaluate(assign) == assign["p"]);
}

TEST_CASE("subduction converts to magnitudes via the Newton substitution") {
    // c1 at n = 3 is q1 - 3.
    const auto q = c_to_q(parse_spoly("c1"), 3);
    CHECK(q == parse_spoly("q1 - 3"));
    // c2 at n = 3 is ((q1-3)^2 - (q2-3))/2.
    const auto q2 = c_to_q(parse_spoly("c2"), 3);
    CHECK(q2 == parse_spoly("1/2*(q1-3)^2 - 1/2*(q2-3)"));
}
