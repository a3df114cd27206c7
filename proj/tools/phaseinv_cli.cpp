// Command-line front end: diffraction simulation, triplet-phase evaluation
// from reflection data, formula emission, subduction of invariants, and the
// built-in verification suite.
//
// Exit codes: 0 success, 1 verification/data failure, 2 usage or input error.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "phaseinv/verification.hpp"

using nlohmann::json;
using namespace phaseinv;

namespace {

struct Options {
    std::string output = "text";
    double tol = 1e-6;
    long budget = 2'000'000;
};

std::ifstream open_or_die(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

json reflections_json(const ReflectionSet& set) {
    json arr = json::array();
    for (const auto& [idx, value] : set.entries)
        arr.push_back({{"index", idx.r}, {"magnitude_sq", value.str()},
                       {"magnitude_sq_float", value.to_double()}});
    return arr;
}

// ---------------------------------------------------------------- simulate
int cmd_simulate(const Options& opt, const std::string& atoms_path,
                 const std::vector<long>& v1, const std::vector<long>& v2) {
    auto in = open_or_die(atoms_path);
    const UnitCell cell = parse_atoms(in);
    const auto sim = simulate(cell, {v1[0], v1[1], v1[2]}, {v2[0], v2[1], v2[2]});
    if (opt.output == "json") {
        json out{{"schema", "phaseinv.simulate.v1"},
                 {"n", cell.n()},
                 {"reflections", reflections_json(sim.reflections)},
                 {"e2_true", sim.e2_true},
                 {"cos_phi_true", sim.cos_phi_true},
                 {"degenerate", sim.degenerate}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "# a b |E|^2  (indices in canonical sign)\n";
        for (const auto& [idx, value] : sim.reflections.entries)
            std::cout << idx.r[0] << " " << idx.r[1] << " " << value.to_double() << "\n";
        std::cout << "# e2_true = " << sim.e2_true
                  << "\n# cos_phi_true = " << sim.cos_phi_true
                  << "\n# degenerate = " << (sim.degenerate ? "yes" : "no") << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- phase
int cmd_phase(const Options& opt, int n, const std::string& reflections_path) {
    auto in = open_or_die(reflections_path);
    const ReflectionSet set = parse_reflections(in);
    const QValues values = set.q_values();

    Rational e2;
    try {
        e2 = e2_from_values(n, values);
    } catch (const SingularR&) {
        std::cerr << "error: the reduction system is singular at this data point "
                     "(degenerate geometry, e.g. coincident or symmetric atoms); "
                     "the triplet phase is not determined by these magnitudes\n";
        return 1;
    }

    auto magnitude = [&](long a, long b) {
        const Rational* v = set.find(a, b);
        if (!v) throw MissingObservable({ObservableIndex::canonical({a, b})});
        return *v;
    };
    const Rational m1_sq = magnitude(1, 0), m2_sq = magnitude(0, 1), m3_sq = magnitude(1, 1);
    double clamp_excess = 0;
    const double cos_phi =
        cos_triplet_phase(std::sqrt(m1_sq.to_double()), std::sqrt(m2_sq.to_double()),
                          std::sqrt(m3_sq.to_double()), e2.to_double(), &clamp_excess);

    json inputs = json::array();
    for (const auto& [a, b] : required_reflections(n)) {
        const ObservableIndex idx = ObservableIndex::canonical({a, b});
        const Rational* v = set.find(a, b);
        inputs.push_back({{"index", idx.r},
                          {"value", v ? v->str() : (idx.r == std::vector<long>{0, 0}
                                                        ? std::to_string(n * n)
                                                        : "?")}});
    }
    if (opt.output == "json") {
        json out{{"schema", "phaseinv.phase.v1"},
                 {"n", n},
                 {"e2", e2.str()},
                 {"e2_float", e2.to_double()},
                 {"cos_phi", cos_phi},
                 {"clamp_excess", clamp_excess},
                 {"inputs", inputs}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "E2 = " << e2.str() << " (" << e2.to_double() << ")\n"
                  << "cos(phi) = " << cos_phi << "\n";
        if (clamp_excess > opt.tol)
            std::cout << "warning: clamped by " << clamp_excess
                      << " (inconsistent or noisy magnitudes)\n";
        std::cout << "inputs used:\n";
        for (const auto& item : inputs)
            std::cout << "  (" << item["index"][0] << "," << item["index"][1]
                      << ") = " << item["value"].get<std::string>() << "\n";
    }
    return 0;
}

// -------------------------------------------------------------------- emit
int cmd_emit(const Options& opt, int n) {
    const TripletFormula f = emit_formula(n);
    if (opt.output == "json") {
        json out = f.to_json();
        out["schema"] = "phaseinv.formula.v1";
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "# E2 as a rational function of magnitudes, n = " << n << "\n"
                  << f.expression.str() << "\n# required observables:";
        for (const auto& idx : f.required_observables) std::cout << " " << idx.str();
        std::cout << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- subduct
// Rewrite an n = 4 generator expression with p eliminated, as a fraction.
std::pair<SymbolicPolynomial, SymbolicPolynomial> eliminate_p_in(
    const SymbolicPolynomial& expr) {
    const PElimination pe = eliminate_p();
    const auto by_p = expr.collect("p");
    int top = 0;
    for (const auto& [k, c] : by_p) top = std::max(top, k);
    SymbolicPolynomial num = SymbolicPolynomial::constant(Rational(0));
    for (const auto& [k, c] : by_p)
        num = num + c * pe.numerator.pow(k) * pe.denominator.pow(top - k);
    return {num, pe.denominator.pow(top)};
}

int cmd_subduct(const Options& opt, int n, const std::string& poly_path) {
    auto in = open_or_die(poly_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text;
    for (std::string line; std::getline(buf, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        text += line + " ";
    }
    const LaurentPolynomial f = parse_laurent(text, VariableShape{1, n});
    const SubductionResult res = subduct(f, n);

    SymbolicPolynomial qnum, qden = SymbolicPolynomial::constant(Rational(1));
    bool uses_p = false;
    for (const auto& [m, c] : res.expression.terms())
        for (const auto& [v, e] : m)
            if (v == "p") uses_p = true;
    if (uses_p) {
        auto [num, den] = eliminate_p_in(res.expression);
        qnum = c_to_q(num, n);
        qden = c_to_q(den, n);
    } else {
        qnum = c_to_q(res.expression, n);
    }

    if (opt.output == "json") {
        json out{{"schema", "phaseinv.subduct.v1"},
                 {"n", n},
                 {"generator_expression", format_spoly(res.expression)},
                 {"steps", res.steps},
                 {"q_numerator", format_spoly(qnum)},
                 {"q_denominator", format_spoly(qden)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "generator expression: " << format_spoly(res.expression) << "\n"
                  << "subduction steps: " << res.steps << "\n"
                  << "q-form numerator:   " << format_spoly(qnum) << "\n"
                  << "q-form denominator: " << format_spoly(qden) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ verify
int cmd_verify(const Options& opt, const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> results;
    if (suite == "paper" || suite == "all") {
        results = run_all_checks(seed, opt.tol, opt.budget);
    } else {
        std::mt19937_64 rng(seed);
        if (suite == "two-atom") results.push_back(check_two_atom_identity());
        else if (suite == "three-atom") results.push_back(check_three_atom_identity(rng));
        else if (suite == "subduction") results.push_back(check_subduction_references());
        else if (suite == "reduction") results.push_back(check_reduction_oracle(rng));
        else if (suite == "group") results.push_back(check_group_embedding());
        else if (suite == "denominator") results.push_back(check_denominator_patterns());
        else if (suite == "witness") results.push_back(check_witnesses());
        else if (suite == "newton") results.push_back(check_newton_palindromy());
        else if (suite == "reynolds") results.push_back(check_reynolds(rng));
        else if (suite == "symmetrization")
            results.push_back(check_symmetrization_algorithm(rng, opt.budget));
        else if (suite == "end-to-end") results.push_back(check_end_to_end(rng, opt.tol));
        else {
            std::cerr << "unknown suite: " << suite << "\n";
            return 2;
        }
    }
    bool all_ok = true;
    if (opt.output == "json") {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            all_ok = all_ok && r.passed;
        }
        std::cout << json{{"schema", "phaseinv.verify.v1"}, {"checks", arr},
                          {"all_passed", all_ok}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
            if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
            std::cout << "\n";
            all_ok = all_ok && r.passed;
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::cout << std::setprecision(17);
    CLI::App app{"Exact triplet-phase invariants from diffraction magnitudes"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--output", opt.output, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--tol", opt.tol, "Float-path tolerance")->capture_default_str();
    app.add_option("--budget", opt.budget, "Operation budget for symmetrization")
        ->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Compute |E|^2 data for a unit cell");
    std::string atoms_path;
    std::vector<long> v1{1, 0, 0}, v2{0, 1, 0};
    sim->add_option("--atoms", atoms_path, "Atoms file (three rationals per line)")
        ->required();
    sim->add_option("--v1", v1, "First reciprocal vector")->expected(3);
    sim->add_option("--v2", v2, "Second reciprocal vector")->expected(3);

    // phase
    auto* ph = app.add_subcommand("phase", "Evaluate E2 and cos(phi) from reflections");
    int phase_n = 3;
    std::string refl_path;
    ph->add_option("--n", phase_n, "Number of atoms")->check(CLI::Range(2, 4))->required();
    ph->add_option("--reflections", refl_path, "Reflections file (a b value)")->required();

    // emit
    auto* em = app.add_subcommand("emit", "Emit the triplet-phase formula");
    int emit_n = 2;
    em->add_option("--n", emit_n, "Number of atoms")->check(CLI::Range(2, 4))->required();

    // subduct
    auto* sd = app.add_subcommand("subduct", "Rewrite an invariant in the generators");
    int subduct_n = 3;
    std::string poly_path;
    sd->add_option("--n", subduct_n, "Number of variables")->check(CLI::Range(2, 4))->required();
    sd->add_option("--input", poly_path, "Laurent polynomial file (variables x1..xn)")
        ->required();

    // verify
    auto* vf = app.add_subcommand("verify", "Run the verification suite");
    std::string suite = "all";
    std::uint64_t seed = 20240817;
    vf->add_option("suite", suite,
                   "all, or one of: two-atom three-atom subduction reduction group "
                   "denominator witness newton reynolds symmetrization end-to-end");
    vf->add_option("--seed", seed, "Random seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(opt, atoms_path, v1, v2);
        if (*ph) return cmd_phase(opt, phase_n, refl_path);
        if (*em) return cmd_emit(opt, emit_n);
        if (*sd) return cmd_subduct(opt, subduct_n, poly_path);
        if (*vf) return cmd_verify(opt, suite, seed);
    } catch (const FileFormat& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MissingObservable& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
