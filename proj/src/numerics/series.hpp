#pragma once

#include <vector>

#include <gmpxx.h>

#include "numerics/ball.hpp"

namespace heights::numerics {

// Truncated element of C[[t]][log t]: sum of c[m][j] t^m log(t)^j over
// 0 <= m < truncation_order and 0 <= j <= log_order. When `polynomial` is
// set the coefficients beyond the truncation order are identically zero and
// evaluation adds no tail term; otherwise the tail policy below applies.
struct LogSeries {
    std::vector<std::vector<Ball>> coeff;
    size_t truncation_order = 0;
    int log_order = 0;
    bool polynomial = false;
    // Declared convergence-safety radius; nonpositive means not declared
    // (evaluation then skips the domain check).
    mpq_class safety_radius = 0;

    LogSeries() = default;
    LogSeries(size_t order, int logs, mpfr_prec_t prec);

    Ball& at(size_t m, int j) { return coeff[m][static_cast<size_t>(j)]; }
    const Ball& at(size_t m, int j) const { return coeff[m][static_cast<size_t>(j)]; }
    bool has_log_terms() const;
    mpfr_prec_t prec() const;
};

// Evaluates the truncated series at the ball t and inflates the radius by a
// tail bound: the term magnitudes over the last quarter of retained orders
// are fitted with a geometric ratio, the implied remainder sum is multiplied
// by a safety factor of 4 and added to the radius. Throws PrecisionError when
// the observed terms are not decaying (ratio at or above 9/10) and MathError
// when a log term is present but the branch cut is touched.
Ball eval_log_series(const LogSeries& s, const Ball& t);

// t d/dt applied coefficientwise: c'[m][j] = m c[m][j] + (j+1) c[m][j+1].
LogSeries theta_apply(const LogSeries& s);

// Values of s, s', ..., s^{(count-1)} at t, computed through the Euler
// operator so that log factors never need differentiating directly:
// (d/dt)^j = t^{-j} theta (theta-1) ... (theta-j+1).
std::vector<Ball> derivative_values(const LogSeries& s, const Ball& t, size_t count);

}  // namespace heights::numerics
