// The index set of ordered variable-ratio pairs, its opposite/adjacent
// relations, the embedded symmetry group, and the Reynolds projection.
#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "phaseinv/group.hpp"
#include "phaseinv/univdenom.hpp"

using namespace phaseinv;

TEST_CASE("ordered pairs, opposite and adjacent relations") {
    const LambdaTable table(3);
    CHECK(table.size() == 6);  // 3 * 2 ordered pairs
    const LambdaIndex a{0, 1}, b{1, 0}, c{1, 2};
    CHECK(opposite(a, b));
    CHECK(!opposite(a, c));
    // adjacent = exactly one shared endpoint in the crossed positions
    CHECK(adjacent(a, c));   // (0,1) and (1,2): a.j == c.i only
    CHECK(!adjacent(a, b));  // both crossed equalities hold -> opposite instead
    CHECK(!adjacent(a, a));
}

TEST_CASE("embedding is a group of size 2 * n! acting on the pairs") {
    const LambdaTable table(3);
    const auto group = table.embedded_group();
    CHECK(group.size() == 12);
    const std::set<LambdaPermutation> distinct(group.begin(), group.end());
    CHECK(distinct.size() == 12);
    for (const auto& h : group) CHECK(preserves_relations(table, h));
}

TEST_CASE("exactly the embedded elements preserve the relations (n = 3)") {
    const LambdaTable table(3);
    const auto group = table.embedded_group();
    const std::set<LambdaPermutation> in_group(group.begin(), group.end());
    std::size_t preserved = 0;
    for (const auto& h : detail::all_lambda_permutations(table.size()))
        if (preserves_relations(table, h)) {
            ++preserved;
            CHECK(in_group.count(h) == 1);
        }
    CHECK(preserved == 12);
}

TEST_CASE("the two-variable table degenerates to a single opposite pair") {
    const LambdaTable table(2);
    CHECK(table.size() == 2);
    CHECK(opposite(table.at(0), table.at(1)));
}

TEST_CASE("reynolds projects onto invariants and is idempotent") {
    const VariableShape shape{1, 3};
    const LaurentPolynomial f = parse_laurent("x1^2*x2^-1*x3^-1 + 3*x1*x2^-1", shape);
    const LaurentPolynomial r = reynolds(f);
    CHECK(is_invariant(r));
    CHECK(reynolds(r) == r);
    // An invariant is its own projection.
    const LaurentPolynomial inv = parse_laurent(
        "x1*x2^-1 + x2*x1^-1 + x1*x3^-1 + x3*x1^-1 + x2*x3^-1 + x3*x2^-1", shape);
    CHECK(reynolds(inv) == inv);
    CHECK(is_invariant(inv));
    CHECK(!is_invariant(f));
}
