// Unit cells, reflection data files, and the diffraction simulator: from
// atom positions to |E|^2 observables (double-precision unit-circle mode
// and an exact rational test mode) plus the ground-truth triplet phase.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseinv/reduction.hpp"

namespace phaseinv {

struct FileFormat : std::runtime_error {
    FileFormat(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Fractional coordinates of n atoms (equal scattering factors).
struct UnitCell {
    std::vector<std::array<Rational, 3>> atoms;
    int n() const { return static_cast<int>(atoms.size()); }
};

namespace detail {

// A digit string as a big integer, immune to the octal reading a leading
// zero would otherwise trigger.
inline BigInt parse_integer_token(std::string s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad integer");
    s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
    BigInt v(s);
    return neg ? -v : v;
}

// Integer, a/b, or decimal with optional exponent ("0.25", "1.5e-3");
// exact in all cases.
inline Rational parse_rational_token(const std::string& tok, int line) {
    try {
        if (auto slash = tok.find('/'); slash != std::string::npos)
            return Rational(parse_integer_token(tok.substr(0, slash)),
                            parse_integer_token(tok.substr(slash + 1)));
        std::string mantissa = tok;
        long exp10 = 0;
        if (auto e = tok.find_first_of("eE"); e != std::string::npos) {
            exp10 = std::stol(tok.substr(e + 1));
            mantissa = tok.substr(0, e);
        }
        if (auto dot = mantissa.find('.'); dot != std::string::npos) {
            const std::size_t frac_digits = mantissa.size() - dot - 1;
            if (frac_digits == 0) throw std::invalid_argument("bad decimal");
            mantissa = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
            exp10 -= static_cast<long>(frac_digits);
        }
        Rational v(parse_integer_token(mantissa));
        BigInt scale = 1;
        for (long i = 0; i < std::abs(exp10); ++i) scale *= 10;
        return exp10 >= 0 ? v * Rational(scale) : v / Rational(scale);
    } catch (const std::exception&) {
        throw FileFormat(line, "cannot parse number '" + tok + "'");
    }
}

inline bool content_line(std::string& text) {
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream probe(text);
    std::string tok;
    return static_cast<bool>(probe >> tok);
}

}  // namespace detail

// Atoms file: one atom per line, three numbers; '#' starts a comment.
inline UnitCell parse_atoms(std::istream& in) {
    UnitCell cell;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!detail::content_line(text)) continue;
        std::istringstream fields(text);
        std::array<Rational, 3> pos;
        std::string tok;
        for (auto& coord : pos) {
            if (!(fields >> tok)) throw FileFormat(line, "expected three coordinates");
            coord = detail::parse_rational_token(tok, line);
        }
        if (fields >> tok) throw FileFormat(line, "unexpected trailing field '" + tok + "'");
        cell.atoms.push_back(std::move(pos));
    }
    return cell;
}

// Measured (or simulated) squared magnitudes keyed by the reflection index
// (a, b), with (a, b) and (-a, -b) identified.
struct ReflectionSet {
    std::map<ObservableIndex, Rational> entries;

    void set(long a, long b, const Rational& value) {
        entries[ObservableIndex::canonical({a, b})] = value;
    }
    const Rational* find(long a, long b) const {
        auto it = entries.find(ObservableIndex::canonical({a, b}));
        return it == entries.end() ? nullptr : &it->second;
    }
    QValues q_values() const { return entries; }
};

// Reflections file: lines "a b value"; '#' starts a comment.
inline ReflectionSet parse_reflections(std::istream& in) {
    ReflectionSet set;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!detail::content_line(text)) continue;
        std::istringstream fields(text);
        long a, b;
        std::string tok;
        if (!(fields >> a >> b)) throw FileFormat(line, "expected 'a b value'");
        if (!(fields >> tok)) throw FileFormat(line, "missing value");
        const Rational value = detail::parse_rational_token(tok, line);
        if (value < Rational(0)) throw FileFormat(line, "magnitude^2 must be >= 0");
        if (fields >> tok) throw FileFormat(line, "unexpected trailing field '" + tok + "'");
        set.set(a, b, value);
    }
    return set;
}

// The reflection indices (a, b) the n-phase pipeline consumes: q_r for
// r = 1..N, q_{s,1} for s = -N/2..N/2-1, and the triplet (1,0), (0,1), (1,1).
inline std::vector<std::array<long, 2>> required_reflections(int n) {
    const int big_n = n * (n - 1);
    std::vector<std::array<long, 2>> out;
    for (long r = 1; r <= big_n; ++r) out.push_back({r, 0});
    for (long s = -big_n / 2; s <= big_n / 2 - 1; ++s) out.push_back({s, 1});
    out.push_back({0, 1});
    out.push_back({1, 1});
    return out;
}

// Minimum circular distance among the pairwise coordinate differences
// (the "ratio nodes" exp(2 pi i (f_j - f_k)) on the unit circle).  The
// phase-recovery system is a squared Vandermonde in these nodes, so its
// float-path conditioning degrades as nodes collide; a cell with small
// separation is numerically degenerate even when it is exactly invertible.
inline double ratio_node_separation(const std::vector<Rational>& fractions) {
    std::vector<double> nodes;
    const int n = static_cast<int>(fractions.size());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) {
                double d = (fractions[j] - fractions[k]).to_double();
                d -= std::floor(d);
                nodes.push_back(d);
            }
    double best = 1;
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            const double d = std::abs(nodes[a] - nodes[b]);
            best = std::min(best, std::min(d, 1 - d));
        }
    return best;
}

struct SimulationResult {
    ReflectionSet reflections;
    double e2_true = 0;       // direct E_2 = 2 Re(E_{v1} E_{v2} E_{-v1-v2})
    double cos_phi_true = 0;  // from the directly computed phases
    bool degenerate = false;  // some |E| of the triplet is (near) zero
};

// Unit-circle simulation: x_j = exp(2 pi i v1.r_j), y_j = exp(2 pi i v2.r_j).
inline SimulationResult simulate(const UnitCell& cell, const std::array<long, 3>& v1,
                                 const std::array<long, 3>& v2) {
    const int n = cell.n();
    if (n < 1) throw std::invalid_argument("simulate: empty cell");

    auto structure_factor = [&](long a, long b) {
        std::complex<double> e = 0;
        for (const auto& atom : cell.atoms) {
            Rational frac(0);
            for (int c = 0; c < 3; ++c) frac += Rational(a * v1[c] + b * v2[c]) * atom[c];
            e += std::polar(1.0, 2.0 * M_PI * frac.to_double());
        }
        return e;
    };

    SimulationResult out;
    for (const auto& [a, b] : required_reflections(n)) {
        const double mag2 = std::norm(structure_factor(a, b));
        out.reflections.set(a, b, Rational::from_double(mag2));
    }
    const std::complex<double> e1 = structure_factor(1, 0);
    const std::complex<double> e2 = structure_factor(0, 1);
    const std::complex<double> e3 = structure_factor(-1, -1);
    out.e2_true = 2.0 * (e1 * e2 * e3).real();
    const double denom = 2.0 * std::abs(e1) * std::abs(e2) * std::abs(e3);
    out.degenerate = denom < 1e-12;
    out.cos_phi_true = out.degenerate ? 0.0 : out.e2_true / denom;
    return out;
}

struct RationalSimulationResult {
    ReflectionSet reflections;
    Rational e2_true;
};

// Exact test mode: the unit-circle points are replaced by arbitrary nonzero
// rationals (a Zariski-density stand-in); every q_{a,b} and the true E_2
// are exact.
inline RationalSimulationResult simulate_rational(const std::vector<Rational>& x,
                                                  const std::vector<Rational>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("simulate_rational: mismatched point arrays");
    const int n = static_cast<int>(x.size());
    std::vector<Rational> point;
    for (const auto& v : x) point.push_back(v);
    for (const auto& v : y) point.push_back(v);

    RationalSimulationResult out;
    for (const auto& [a, b] : required_reflections(n)) {
        const ObservableIndex idx = ObservableIndex::canonical({a, b});
        out.reflections.entries[idx] = evaluate(q_poly(idx, n), point);
    }
    out.e2_true = evaluate(E_m_poly(n, 2), point);
    return out;
}

}  // namespace phaseinv
