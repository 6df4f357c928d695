#pragma once

#include <vector>

#include "numerics/ball.hpp"

namespace heights::numerics {

class BallMat {
  public:
    BallMat() = default;
    BallMat(size_t rows, size_t cols, mpfr_prec_t prec)
        : rows_(rows), cols_(cols), data_(rows * cols, Ball(prec)) {}

    static BallMat identity(size_t n, mpfr_prec_t prec);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Ball& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Ball& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }
    mpfr_prec_t prec() const;

    BallMat operator*(const BallMat& o) const;
    BallMat operator+(const BallMat& o) const;
    BallMat operator-(const BallMat& o) const;
    BallMat transpose() const;
    // Copy with every radius cleared: the midpoint matrix as exact balls.
    BallMat midpoints() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Ball> data_;
};

// Approximate inverse of the midpoint matrix by Gaussian elimination with
// partial pivoting; radii of the result are cleared. Throws MathError when a
// pivot vanishes at working precision.
BallMat approx_mid_inverse(const BallMat& a);

// Verified solve: returns X whose balls contain A^{-1} Y for every member of
// the input balls. Certification follows the residual-iteration scheme: with
// R an approximate inverse, ||I - RA|| < 1 is checked in ball arithmetic and
// the defect R(Y - A X0) is inflated through the contraction bound. Throws
// PrecisionError when the contraction cannot be certified.
BallMat ball_matrix_solve(const BallMat& a, const BallMat& y);

// Certifies that every Hermitian matrix inside the entrywise enclosure is
// positive definite, by LDL elimination with certifiably positive pivots.
// False means the certificate failed, not that some member is indefinite.
bool ball_positive_definite(const BallMat& h);

}  // namespace heights::numerics
