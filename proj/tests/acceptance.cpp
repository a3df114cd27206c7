// Acceptance gate: runs every suite in the verification header and prints
// one line per criterion.  Exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "phaseinv/verification.hpp"

using namespace phaseinv;

int main() {
    std::mt19937_64 rng(20240817);
    int failures = 0;
    int index = 0;
    auto run = [&](const char* label, const std::function<CheckResult()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        const CheckResult r = fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%2d. %s  %s (%.1fs)%s%s\n", ++index, r.passed ? "PASS" : "FAIL",
                    label, secs, r.detail.empty() ? "" : "  -- ", r.detail.c_str());
        if (!r.passed) ++failures;
    };

    run("two-atom closed form is exactly the invariant",
        [] { return check_two_atom_identity(); });
    run("three-atom fraction N/D is exactly the invariant",
        [&] { return check_three_atom_identity(rng); });
    run("subduction reproduces the published coefficients",
        [] { return check_subduction_references(); });
    run("reduction evaluation equals the direct invariant",
        [&] { return check_reduction_oracle(rng); });
    run("relation-preserving maps = the embedded group (12/720)",
        [] { return check_group_embedding(); });
    run("denominator zero patterns (12/708 and 12/518388)",
        [] { return check_denominator_patterns(); });
    run("witness pairs: n = 5..12 plus a certified n = 4 pair",
        [] { return check_witnesses(); });
    run("Newton round trips and palindromic coefficients",
        [] { return check_newton_palindromy(); });
    run("Reynolds images: invariant, idempotent, subductible",
        [&] { return check_reynolds(rng); });
    run("symmetrization rewriting agrees with its input",
        [&] { return check_symmetrization_algorithm(rng); });
    run("simulate -> phase within 1e-6 (float) and exactly",
        [&] { return check_end_to_end(rng); });

    if (failures)
        std::printf("%d criterion(s) FAILED\n", failures);
    else
        std::printf("all %d criteria passed\n", index);
    return failures ? 1 : 0;
}
