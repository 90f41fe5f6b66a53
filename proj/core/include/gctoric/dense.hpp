#pragma once

// Small dense matrices over a field, with Gauss-Jordan elimination. Used with
// exact scalars (Rational, GaussianRational) and, for canonical forms, with
// floating scalars under an explicit zero tolerance.

#include <cmath>
#include <vector>

#include "gctoric/errors.hpp"
#include "gctoric/scalar.hpp"

namespace gct {

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int r, int c) { return data_[r * cols_ + c]; }
    const T& operator()(int r, int c) const { return data_[r * cols_ + c]; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        DenseMatrix out(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                if (a(r, k) == T(0)) continue;
                for (int c = 0; c < b.cols_; ++c) out(r, c) += a(r, k) * b(k, c);
            }
        return out;
    }
    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend DenseMatrix operator-(DenseMatrix a) {
        for (auto& v : a.data_) v = -v;
        return a;
    }
    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_same(const DenseMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

inline double pivot_magnitude(const Rational& v) { return v == 0 ? 0.0 : 1.0; }
inline double pivot_magnitude(const GaussianRational& v) { return v.is_zero() ? 0.0 : 1.0; }
inline double pivot_magnitude(double v) { return std::abs(v); }
inline double pivot_magnitude(const Complex& v) { return std::abs(v); }

template <class T>
constexpr bool is_exact() {
    return std::is_same_v<T, Rational> || std::is_same_v<T, GaussianRational>;
}

}  // namespace detail

/// Reduced row-echelon form in place; returns the pivot columns.
///
/// Pivot rule: columns are scanned left to right; in each column the pivot is
/// the first nonzero entry (exact scalars) or the entry of largest magnitude
/// (floating scalars) among the rows not yet used. A floating column whose
/// largest remaining entry is <= tol is treated as zero, and such entries are
/// cleared. The RREF of a matrix is unique, so for exact scalars the result is
/// a canonical form of the row space.
template <class T>
std::vector<int> rref(DenseMatrix<T>& m, double tol = 0.0) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int best = -1;
        double best_mag = detail::is_exact<T>() ? 0.0 : tol;
        for (int r = row; r < m.rows(); ++r) {
            double mag = detail::pivot_magnitude(m(r, col));
            if (mag > best_mag) {
                best = r;
                best_mag = mag;
                if constexpr (detail::is_exact<T>()) break;
            }
        }
        if (best < 0) {
            if constexpr (!detail::is_exact<T>())
                for (int r = row; r < m.rows(); ++r) m(r, col) = T(0);
            continue;
        }
        if (best != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
        T inv = T(1) / m(row, col);
        for (int c = 0; c < m.cols(); ++c) m(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == T(0)) continue;
            T factor = m(r, col);
            for (int c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
            m(r, col) = T(0);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
int rank(DenseMatrix<T> m, double tol = 0.0) {
    return static_cast<int>(rref(m, tol).size());
}

/// Basis of the right null space {x : m x = 0}, one vector per row of the result.
template <class T>
DenseMatrix<T> kernel(DenseMatrix<T> m, double tol = 0.0) {
    auto pivots = rref(m, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    DenseMatrix<T> basis(static_cast<int>(free_cols.size()), m.cols());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        int f = free_cols[k];
        basis(static_cast<int>(k), f) = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) basis(static_cast<int>(k), pivots[r]) = -m(static_cast<int>(r), f);
    }
    return basis;
}

/// Inverse of a square matrix; throws PreconditionError when singular.
template <class T>
DenseMatrix<T> inverse(const DenseMatrix<T>& m, double tol = 0.0) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    int n = m.rows();
    DenseMatrix<T> aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = T(1);
    }
    auto pivots = rref(aug, tol);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1)
        throw PreconditionError("matrix is singular");
    DenseMatrix<T> out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
    return out;
}

/// Determinant by Gaussian elimination (exact scalars).
template <class T>
T determinant(DenseMatrix<T> m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    int n = m.rows();
    T det(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int r = col; r < n; ++r)
            if (!(m(r, col) == T(0))) {
                p = r;
                break;
            }
        if (p < 0) return T(0);
        if (p != col) {
            for (int c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        T inv = T(1) / m(col, col);
        for (int r = col + 1; r < n; ++r) {
            T factor = m(r, col) * inv;
            if (factor == T(0)) continue;
            for (int c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

}  // namespace gct
