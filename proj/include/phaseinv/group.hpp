// The group G = S_n x T, its action on Laurent polynomials and on the
// index set Lambda, adjacency/opposition combinatorics, and the Reynolds
// operator.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "phaseinv/laurent.hpp"

namespace phaseinv {

struct RequiresNAtLeast3 : std::invalid_argument {
    RequiresNAtLeast3() : std::invalid_argument("operation requires n >= 3") {}
};

// A permutation of {1..n} (stored 0-based) paired with an inversion flag;
// epsilon = -1 is the inversion tau.
struct GroupElement {
    std::vector<int> sigma;
    int epsilon = 1;

    static GroupElement identity(int n) {
        GroupElement g;
        g.sigma.resize(n);
        for (int i = 0; i < n; ++i) g.sigma[i] = i;
        return g;
    }

    GroupElement compose(const GroupElement& o) const {
        GroupElement r;
        r.sigma.resize(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) r.sigma[i] = sigma[o.sigma[i]];
        r.epsilon = epsilon * o.epsilon;
        return r;
    }

    GroupElement inverse() const {
        GroupElement r;
        r.sigma.resize(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) r.sigma[sigma[i]] = i;
        r.epsilon = epsilon;
        return r;
    }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        return std::tie(a.sigma, a.epsilon) < std::tie(b.sigma, b.epsilon);
    }
};

// All 2 * n! elements of G, permutations in lexicographic order, +1 before -1.
inline std::vector<GroupElement> all_group_elements(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<GroupElement> out;
    do {
        for (int eps : {1, -1}) out.push_back(GroupElement{perm, eps});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Variables x_{h,j} -> x_{h,sigma(j)}^{epsilon}, identically on every array.
inline LaurentPolynomial act(const GroupElement& g, const LaurentPolynomial& p) {
    const auto& s = p.shape();
    if (g.sigma.size() != static_cast<std::size_t>(s.n))
        throw std::invalid_argument("act: permutation size does not match shape");
    LaurentPolynomial r(s);
    for (const auto& [e, c] : p.terms()) {
        ExponentVector e2(s);
        for (int h = 0; h < s.m; ++h)
            for (int j = 0; j < s.n; ++j) e2.at(h, g.sigma[j]) = g.epsilon * e.at(h, j);
        r.add_term(e2, c);
    }
    return r;
}

// Ordered pair (i, j), i != j, indexing the ratio x_i / x_j.  0-based.
struct LambdaIndex {
    int i, j;
    friend bool operator==(const LambdaIndex&, const LambdaIndex&) = default;
    friend bool operator<(const LambdaIndex& a, const LambdaIndex& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    }
};

inline std::vector<LambdaIndex> lambda_set(int n) {
    std::vector<LambdaIndex> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) out.push_back({i, j});
    return out;
}

inline bool opposite(const LambdaIndex& a, const LambdaIndex& b) {
    return a.i == b.j && a.j == b.i;
}

// Exactly one of i = j', j = i'; the ratio product is then again a ratio.
inline bool adjacent(const LambdaIndex& a, const LambdaIndex& b) {
    return (a.i == b.j) != (a.j == b.i);
}

// A permutation of Lambda, stored as images indexed by position in
// lambda_set(n).
using LambdaPermutation = std::vector<int>;

class LambdaTable {
public:
    explicit LambdaTable(int n) : n_(n), elements_(lambda_set(n)) {
        for (std::size_t p = 0; p < elements_.size(); ++p) position_[elements_[p]] = p;
    }

    int n() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<LambdaIndex>& elements() const { return elements_; }
    const LambdaIndex& at(int p) const { return elements_[p]; }
    int position(const LambdaIndex& x) const { return position_.at(x); }

    // The embedding G -> Sym(Lambda): (i,j) -> (sigma(i), sigma(j)),
    // transposed when epsilon = -1.
    LambdaPermutation embed(const GroupElement& g) const {
        LambdaPermutation h(size());
        for (std::size_t p = 0; p < size(); ++p) {
            LambdaIndex x{g.sigma[elements_[p].i], g.sigma[elements_[p].j]};
            if (g.epsilon < 0) std::swap(x.i, x.j);
            h[p] = position(x);
        }
        return h;
    }

    std::vector<LambdaPermutation> embedded_group() const {
        std::vector<LambdaPermutation> out;
        for (const auto& g : all_group_elements(n_)) out.push_back(embed(g));
        return out;
    }

private:
    int n_;
    std::vector<LambdaIndex> elements_;
    std::map<LambdaIndex, int> position_;
};

// Lemma-style adjacency/opposition preservation test over a permutation of
// Lambda.  Refuses n = 2 (the characterization fails there).
inline bool preserves_relations(const LambdaTable& table, const LambdaPermutation& h) {
    if (table.n() < 3) throw RequiresNAtLeast3();
    const auto& el = table.elements();
    for (std::size_t p = 0; p < el.size(); ++p)
        for (std::size_t q = 0; q < el.size(); ++q) {
            if (p == q) continue;
            const auto& x = el[p];
            const auto& y = el[q];
            const auto& gx = el[h[p]];
            const auto& gy = el[h[q]];
            if (opposite(x, y) != opposite(gx, gy)) return false;
            if (adjacent(x, y) != adjacent(gx, gy)) return false;
        }
    return true;
}

// (1/|G|) sum_{g in G} g(p); idempotent projection onto invariants.
inline LaurentPolynomial reynolds(const LaurentPolynomial& p) {
    const int n = p.shape().n;
    LaurentPolynomial sum(p.shape());
    const auto group = all_group_elements(n);
    for (const auto& g : group) sum += act(g, p);
    sum *= Rational(1, BigInt(group.size()));
    return sum;
}

// Properties a (degree zero per array), b (fixed by tau), c (fixed by the
// diagonal S_n action).
inline bool is_invariant(const LaurentPolynomial& p) {
    if (!p.is_degree_zero()) return false;
    const int n = p.shape().n;
    GroupElement tau = GroupElement::identity(n);
    tau.epsilon = -1;
    if (!(act(tau, p) == p)) return false;
    // Adjacent transpositions generate S_n.
    for (int i = 0; i + 1 < n; ++i) {
        GroupElement t = GroupElement::identity(n);
        std::swap(t.sigma[i], t.sigma[i + 1]);
        if (!(act(t, p) == p)) return false;
    }
    return true;
}

}  // namespace phaseinv
