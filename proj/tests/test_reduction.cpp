// The linear reduction from observables to the triplet invariant: the
// banded q-matrix, the lambda solve, the e-identities, and the emitted
// closed formula.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phaseinv/closed_forms.hpp"
#include "phaseinv/crystal.hpp"
#include "phaseinv/reduction.hpp"

using namespace phaseinv;

namespace {
QValues q_values_at(int n, const std::vector<Rational>& point) {
    QValues values;
    const int big_n = n * (n - 1);
    auto put = [&](long a, long b) {
        const ObservableIndex idx = ObservableIndex::canonical({a, b});
        values[idx] = evaluate(q_poly(idx, n), point);
    };
    for (int r = 1; r <= big_n; ++r) put(r, 0);
    for (int s = -big_n / 2; s <= big_n / 2 - 1; ++s) put(s, 1);
    put(0, 1);
    put(1, 1);
    return values;
}
}  // namespace

TEST_CASE("worked two-atom point: lambdas and invariant value") {
    const std::vector<Rational> pt{Rational(2), Rational(1), Rational(3), Rational(1)};
    const auto values = q_values_at(2, pt);
    const auto lambdas = solve_lambdas(2, values);
    REQUIRE(lambdas.size() == 2);
    CHECK(lambdas[0] == Rational(-16, 9));
    CHECK(lambdas[1] == Rational(35, 9));
    CHECK(e2_from_values(2, values) == Rational(28));
    CHECK(evaluate(E_m_poly(2, 2), pt) == Rational(28));
}

TEST_CASE("reduction equals the direct invariant at random points") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> num(1, 40), den(1, 8);
    for (int n = 2; n <= 4; ++n) {
        const auto e2 = E_m_poly(n, 2);
        int done = 0, guard = 0;
        while (done < 5 && ++guard < 100) {
            std::vector<Rational> pt;
            for (int i = 0; i < 2 * n; ++i) pt.push_back(Rational(num(rng), den(rng)));
            try {
                CHECK(e2_from_values(n, q_values_at(n, pt)) == evaluate(e2, pt));
                ++done;
            } catch (const SingularR&) {
            }
        }
        CHECK(done == 5);
    }
}

TEST_CASE("missing observables are reported by index") {
    const std::vector<Rational> pt{Rational(2), Rational(1), Rational(3), Rational(1)};
    auto values = q_values_at(2, pt);
    values.erase(ObservableIndex::canonical({2, 0}));
    try {
        e2_from_values(2, values);
        FAIL("expected MissingObservable");
    } catch (const MissingObservable& e) {
        CHECK(std::string(e.what()).find("q[2,0]") != std::string::npos);
    }
}

TEST_CASE("coincident atoms give a singular system") {
    // All ratios equal 1: every entry of the matrix is q_r - n with the
    // same value, so the system cannot be solved.
    const std::vector<Rational> pt{Rational(2), Rational(2), Rational(3), Rational(3)};
    CHECK_THROWS_AS(solve_lambdas(2, q_values_at(2, pt)), SingularR);
}

TEST_CASE("the emitted formula evaluates like the reduction") {
    for (int n = 2; n <= 3; ++n) {
        const TripletFormula f = emit_formula(n);
        CHECK(f.n == n);
        std::mt19937_64 rng(31 + n);
        std::uniform_int_distribution<long> num(1, 30), den(1, 7);
        int done = 0, guard = 0;
        while (done < 3 && ++guard < 50) {
            std::vector<Rational> pt;
            for (int i = 0; i < 2 * n; ++i) pt.push_back(Rational(num(rng), den(rng)));
            const auto values = q_values_at(n, pt);
            SymbolAssignment assign;
            assign.observables = values;
            try {
                const Rational direct = e2_from_values(n, values);
                CHECK(f.expression.evaluate(assign) == direct);
                ++done;
            } catch (const std::exception&) {
            }
        }
        CHECK(done == 3);
    }
}

TEST_CASE("the two-atom emitted formula matches the closed form") {
    const TripletFormula f = emit_formula(2);
    const auto closed = two_atom_formula();
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> num(1, 30), den(1, 7);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rational> pt;
        for (int i = 0; i < 4; ++i) pt.push_back(Rational(num(rng), den(rng)));
        SymbolAssignment assign;
        assign.observables = q_values_at(2, pt);
        try {
            CHECK(f.expression.evaluate(assign) == closed.evaluate(assign));
        } catch (const std::exception&) {
            // fell on a singular point of the emitted fraction; acceptable here
        }
    }
}

TEST_CASE("triplet cosine: exact value, zero guard, and clamping") {
    CHECK(cos_triplet_phase(Rational(1), Rational(2), Rational(7), Rational(14)) ==
          Rational(1, 2));
    CHECK_THROWS_AS(cos_triplet_phase(Rational(0), Rational(2), Rational(7), Rational(1)),
                    ZeroMagnitude);
    double excess = 0;
    CHECK(cos_triplet_phase(1.0, 1.0, 1.0, 2.5, &excess) == 1.0);
    CHECK(excess == Catch::Approx(0.25));
    CHECK(cos_triplet_phase(1.0, 1.0, 1.0, 1.0) == 0.5);
}
