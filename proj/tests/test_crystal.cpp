// File parsing, diffraction simulation, and the exact rational test mode.
#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "phaseinv/crystal.hpp"
#include "phaseinv/reduction.hpp"

using namespace phaseinv;

TEST_CASE("atoms files parse fractions, decimals, and comments") {
    std::istringstream in(
        "# comment line\n"
        "0 0 0\n"
        "1/2 0.25 0   # trailing comment\n"
        "\n"
        "0.434968 1.5e-3 3/4\n");
    const UnitCell cell = parse_atoms(in);
    REQUIRE(cell.n() == 3);
    CHECK(cell.atoms[1][0] == Rational(1, 2));
    CHECK(cell.atoms[1][1] == Rational(1, 4));
    CHECK(cell.atoms[2][0] == Rational(434968, 1000000));
    CHECK(cell.atoms[2][1] == Rational(15, 10000));
    CHECK(cell.atoms[2][2] == Rational(3, 4));
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream bad("0 0 0\n1/2 oops 0\n");
    try {
        parse_atoms(bad);
        FAIL("expected FileFormat");
    } catch (const FileFormat& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("oops") != std::string::npos);
    }
    std::istringstream missing("0 0\n");
    CHECK_THROWS_AS(parse_atoms(missing), FileFormat);
}

TEST_CASE("reflection files canonicalize the index sign") {
    std::istringstream in("1 0 4\n-2 -1 9/2\n");
    const ReflectionSet set = parse_reflections(in);
    CHECK(*set.find(1, 0) == Rational(4));
    CHECK(*set.find(2, 1) == Rational(9, 2));   // stored under canonical sign
    CHECK(*set.find(-2, -1) == Rational(9, 2)); // lookup canonicalizes too
    CHECK(set.find(5, 5) == nullptr);
    std::istringstream neg("1 0 -1\n");
    CHECK_THROWS_AS(parse_reflections(neg), FileFormat);
}

TEST_CASE("two-atom worked example: magnitudes and vanishing invariant") {
    // Atoms at 0 and 1/2 along x, with collinear reciprocal vectors: the
    // x-ratios are (1, -1) and the y-ratios (1, 1).
    UnitCell cell{{{Rational(0), Rational(0), Rational(0)},
                   {Rational(1, 2), Rational(0), Rational(0)}}};
    const auto sim = simulate(cell, {1, 0, 0}, {2, 0, 0});
    CHECK(sim.reflections.find(1, 0)->to_double() == Catch::Approx(0).margin(1e-12));
    CHECK(sim.reflections.find(0, 1)->to_double() == Catch::Approx(4).margin(1e-12));
    CHECK(sim.reflections.find(1, 1)->to_double() == Catch::Approx(0).margin(1e-12));
    CHECK(sim.e2_true == Catch::Approx(0).margin(1e-12));
    CHECK(sim.degenerate);  // two of the triplet magnitudes vanish
}

TEST_CASE("a single atom gives unit magnitudes everywhere") {
    UnitCell cell{{{Rational(1, 3), Rational(2, 7), Rational(0)}}};
    const auto sim = simulate(cell, {1, 0, 0}, {0, 1, 0});
    for (const auto& [idx, value] : sim.reflections.entries)
        CHECK(value.to_double() == Catch::Approx(1));
    CHECK(sim.cos_phi_true == Catch::Approx(1));
}

TEST_CASE("rational test mode matches the reduction exactly") {
    const std::vector<Rational> x{Rational(2), Rational(3), Rational(5)};
    const std::vector<Rational> y{Rational(7, 2), Rational(11, 3), Rational(13, 5)};
    const auto sim = simulate_rational(x, y);
    CHECK(e2_from_values(3, sim.reflections.q_values()) == sim.e2_true);
    std::vector<Rational> pt = x;
    pt.insert(pt.end(), y.begin(), y.end());
    CHECK(sim.e2_true == evaluate(E_m_poly(3, 2), pt));
}

TEST_CASE("required reflection list covers the reduction inputs") {
    const auto req = required_reflections(3);
    // q_r for r = 1..6, q_{s,1} for s = -3..2, plus (0,1) and (1,1).
    CHECK(req.size() == 6 + 6 + 2);
    const std::vector<Rational> pt{Rational(2), Rational(3), Rational(5),
                                   Rational(7, 2), Rational(11, 3), Rational(13, 5)};
    QValues values;
    for (const auto& [a, b] : req) {
        const auto idx = ObservableIndex::canonical({a, b});
        values[idx] = evaluate(q_poly(idx, 3), pt);
    }
    CHECK_NOTHROW(e2_from_values(3, values));
}

TEST_CASE("ratio node separation flags colliding difference nodes") {
    // 1/8 - 0 and 5/8 - 1/2 coincide, so two nodes collide -> separation 0
    const std::vector<Rational> collide{Rational(0), Rational(1, 8), Rational(1, 2),
                                        Rational(5, 8)};
    CHECK(ratio_node_separation(collide) == Catch::Approx(0).margin(1e-15));
    const std::vector<Rational> spread{Rational(0), Rational(1, 7), Rational(3, 7)};
    CHECK(ratio_node_separation(spread) > 0.05);
}
