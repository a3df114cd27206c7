// Dense exact matrices and a pivoting Gaussian solver.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "phaseinv/rational.hpp"

namespace phaseinv {

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("matrix is singular") {}
};

class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("RationalMatrix: zero dimension");
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

// Exact Gaussian elimination, first-nonzero pivot.  Throws SingularMatrix
// when det(A) = 0.
inline std::vector<Rational> solve_linear(const RationalMatrix& a,
                                          const std::vector<Rational>& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: matrix not square");
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: size mismatch");
    const std::size_t n = a.rows();

    RationalMatrix m = a;
    std::vector<Rational> rhs = b;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            std::swap(rhs[pivot], rhs[col]);
        }
        const Rational inv = m(col, col).inverse();
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col).is_zero()) continue;
            const Rational factor = m(r, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m(i, i);
    return x;
}

inline std::vector<Rational> mat_vec(const RationalMatrix& a, const std::vector<Rational>& x) {
    if (x.size() != a.cols()) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<Rational> y(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) y[r] += a(r, c) * x[c];
    return y;
}

}  // namespace phaseinv
