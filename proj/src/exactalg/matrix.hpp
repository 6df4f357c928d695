#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "exactalg/ratfunc.hpp"
#include "support/errors.hpp"

namespace heights::exactalg {

// Relative cost of using an entry as a pivot; exact elimination picks the
// cheapest nonzero pivot in the column to limit expression growth.
inline size_t pivot_cost(const mpq_class& c) {
    return mpz_sizeinbase(c.get_num().get_mpz_t(), 2) + mpz_sizeinbase(c.get_den().get_mpz_t(), 2);
}
inline size_t pivot_cost(const RatFunc& c) {
    size_t n = 0;
    for (const auto& z : c.num().coeffs()) n += mpz_sizeinbase(z.get_mpz_t(), 2);
    for (const auto& z : c.den().coeffs()) n += mpz_sizeinbase(z.get_mpz_t(), 2);
    return n + 16 * (c.num().degree() + c.den().degree() + 2);
}

template <typename C>
class Mat {
   public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, C(0)) {}
    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = C(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    C& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const C& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw UsageError("matrix product shape mismatch");
        Mat out(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const C& v = at(i, k);
                if (coeff_is_zero(v)) continue;
                for (size_t j = 0; j < o.cols_; ++j) out.at(i, j) += v * o.at(k, j);
            }
        return out;
    }
    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix sum shape mismatch");
        Mat out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }
    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix difference shape mismatch");
        Mat out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
        return out;
    }
    Mat transpose() const {
        Mat out(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }
    std::vector<C> apply(const std::vector<C>& v) const {
        if (v.size() != cols_) throw UsageError("matrix-vector shape mismatch");
        std::vector<C> out(rows_, C(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!coeff_is_zero(at(i, j))) out[i] += at(i, j) * v[j];
        return out;
    }
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

   private:
    size_t rows_, cols_;
    std::vector<C> a_;
};

using QMat = Mat<mpq_class>;

// In-place reduced row echelon form; returns the pivot columns in order.
// Column limit allows reducing an augmented matrix without pivoting into the
// right-hand block.
template <typename C>
std::vector<size_t> rref_inplace(Mat<C>& m, size_t pivot_col_limit) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < pivot_col_limit && row < m.rows(); ++col) {
        size_t best = SIZE_MAX;
        size_t best_cost = 0;
        for (size_t i = row; i < m.rows(); ++i) {
            if (coeff_is_zero(m.at(i, col))) continue;
            size_t cost = pivot_cost(m.at(i, col));
            if (best == SIZE_MAX || cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        if (best == SIZE_MAX) continue;
        if (best != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(best, j));
        C inv = C(1) / m.at(row, col);
        for (size_t j = col; j < m.cols(); ++j)
            if (!coeff_is_zero(m.at(row, j))) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || coeff_is_zero(m.at(i, col))) continue;
            C f = m.at(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!coeff_is_zero(m.at(row, j))) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename C>
struct LinearSolution {
    bool consistent = false;
    std::vector<C> particular;
    std::vector<std::vector<C>> kernel;
};

// Exact solve over a field: particular solution of A x = y plus a kernel
// basis, or consistent = false when the system has no solution.
template <typename C>
LinearSolution<C> solve_exact(const Mat<C>& A, const std::vector<C>& y) {
    if (y.size() != A.rows()) throw UsageError("right-hand side length mismatch");
    Mat<C> aug(A.rows(), A.cols() + 1);
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = y[i];
    }
    auto pivots = rref_inplace(aug, A.cols());
    LinearSolution<C> out;
    // Inconsistent iff some row is (0 ... 0 | nonzero).
    for (size_t i = pivots.size(); i < A.rows(); ++i) {
        if (!coeff_is_zero(aug.at(i, A.cols()))) return out;
    }
    out.consistent = true;
    out.particular.assign(A.cols(), C(0));
    for (size_t r = 0; r < pivots.size(); ++r) out.particular[pivots[r]] = aug.at(r, A.cols());
    std::vector<bool> is_pivot(A.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    for (size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<C> v(A.cols(), C(0));
        v[f] = C(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug.at(r, f);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

template <typename C>
std::vector<std::vector<C>> kernel_basis(const Mat<C>& A) {
    Mat<C> m = A;
    auto pivots = rref_inplace(m, A.cols());
    std::vector<bool> is_pivot(A.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<C>> out;
    for (size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<C> v(A.cols(), C(0));
        v[f] = C(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

template <typename C>
std::optional<Mat<C>> inverse(const Mat<C>& A) {
    if (A.rows() != A.cols()) throw UsageError("inverse of non-square matrix");
    size_t n = A.rows();
    Mat<C> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = C(1);
    }
    auto pivots = rref_inplace(aug, n);
    if (pivots.size() != n) return std::nullopt;
    Mat<C> out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

template <typename C>
C determinant(const Mat<C>& A) {
    if (A.rows() != A.cols()) throw UsageError("determinant of non-square matrix");
    Mat<C> m = A;
    size_t n = A.rows();
    C det = C(1);
    for (size_t col = 0; col < n; ++col) {
        size_t best = SIZE_MAX;
        size_t best_cost = 0;
        for (size_t i = col; i < n; ++i) {
            if (coeff_is_zero(m.at(i, col))) continue;
            size_t cost = pivot_cost(m.at(i, col));
            if (best == SIZE_MAX || cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        if (best == SIZE_MAX) return C(0);
        if (best != col) {
            for (size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(best, j));
            det = -det;
        }
        det = det * m.at(col, col);
        C inv = C(1) / m.at(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            if (coeff_is_zero(m.at(i, col))) continue;
            C f = m.at(i, col) * inv;
            for (size_t j = col; j < n; ++j)
                if (!coeff_is_zero(m.at(col, j))) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

}  // namespace heights::exactalg
