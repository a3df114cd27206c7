// Newton identities, elementary-symmetric decomposition, and the
// palindromic normalization used before rewriting in magnitudes.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phaseinv/symfun.hpp"

using namespace phaseinv;

TEST_CASE("newton identities: small cases against hand expansion") {
    // p1 = s1
    CHECK(newton_p_from_e(1, 4) == SymbolicPolynomial::symbol(sym_s(1)));
    // p2 = s1^2 - 2 s2
    const auto p2 = newton_p_from_e(2, 4);
    const auto want =
        SymbolicPolynomial::symbol(sym_s(1), 2) -
        SymbolicPolynomial::symbol(sym_s(2), 1, Rational(2));
    CHECK(p2 == want);
    // e2 = (p1^2 - p2) / 2
    const auto e2 = newton_e_from_p(2, 4);
    const auto want_e =
        SymbolicPolynomial::symbol(sym_p(1), 2, Rational(1, 2)) -
        SymbolicPolynomial::symbol(sym_p(2), 1, Rational(1, 2));
    CHECK(e2 == want_e);
}

TEST_CASE("newton round trips are exact up to r = 12") {
    const int nv = 12;
    for (int r = 1; r <= nv; ++r) {
        SymbolicPolynomial p_in_e = newton_p_from_e(r, nv);
        for (int i = r; i >= 1; --i)
            p_in_e = p_in_e.substitute(sym_s(i), newton_e_from_p(i, nv));
        CHECK(p_in_e == SymbolicPolynomial::symbol(sym_p(r)));
    }
}

TEST_CASE("decompose_in_elementary inverts elementary evaluation") {
    const std::vector<std::string> vars{"z1", "z2", "z3"};
    // f = z1 z2 z3 + z1 + z2 + z3 = e3 + e1
    SymbolicPolynomial f =
        SymbolicPolynomial::symbol("z1") * SymbolicPolynomial::symbol("z2") *
            SymbolicPolynomial::symbol("z3") +
        SymbolicPolynomial::symbol("z1") + SymbolicPolynomial::symbol("z2") +
        SymbolicPolynomial::symbol("z3");
    const auto d = decompose_in_elementary(f, vars);
    CHECK(d == SymbolicPolynomial::symbol(sym_s(3)) + SymbolicPolynomial::symbol(sym_s(1)));
    // Non-symmetric input is rejected.
    CHECK_THROWS_AS(decompose_in_elementary(SymbolicPolynomial::symbol("z1"), vars),
                    NotSymmetric);
}

TEST_CASE("random symmetric polynomials round trip through elementaries") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coeff(-4, 4);
    const std::vector<std::string> vars{"z1", "z2", "z3"};
    const auto elems = elementary_in(vars, 3);
    for (int trial = 0; trial < 10; ++trial) {
        // Random polynomial in e1, e2, e3 expanded into z's and decomposed back.
        SymbolicPolynomial f = SymbolicPolynomial::constant(Rational(coeff(rng)));
        SymbolicPolynomial expected = SymbolicPolynomial::constant(f.constant_value());
        for (int i = 1; i <= 3; ++i) {
            const Rational c(coeff(rng));
            if (c.is_zero()) continue;
            f = f + elems[i] * SymbolicPolynomial::constant(c);
            expected = expected + SymbolicPolynomial::symbol(sym_s(i), 1, c);
        }
        CHECK(decompose_in_elementary(f, vars) == expected);
    }
}
