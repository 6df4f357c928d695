#include "numerics/linalg.hpp"

#include <algorithm>

#include "support/errors.hpp"

namespace heights::numerics {

BallMat BallMat::identity(size_t n, mpfr_prec_t prec) {
    BallMat m(n, n, prec);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Ball::from_int(1, prec);
    return m;
}

mpfr_prec_t BallMat::prec() const {
    if (data_.empty()) return kDefaultPrec;
    return data_[0].prec();
}

BallMat BallMat::operator*(const BallMat& o) const {
    if (cols_ != o.rows_) throw UsageError("matrix product shape mismatch");
    mpfr_prec_t p = std::max(prec(), o.prec());
    BallMat out(rows_, o.cols_, p);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < o.cols_; ++j) {
            Ball acc(p);
            for (size_t k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

BallMat BallMat::operator+(const BallMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix sum shape mismatch");
    BallMat out(rows_, cols_, std::max(prec(), o.prec()));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) + o.at(i, j);
    return out;
}

BallMat BallMat::operator-(const BallMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix difference shape mismatch");
    BallMat out(rows_, cols_, std::max(prec(), o.prec()));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - o.at(i, j);
    return out;
}

BallMat BallMat::transpose() const {
    BallMat out(cols_, rows_, prec());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

BallMat BallMat::midpoints() const {
    BallMat out = *this;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) mpfr_set_zero(out.at(i, j).mutable_rad().raw(), 1);
    return out;
}

BallMat approx_mid_inverse(const BallMat& a) {
    if (a.rows() != a.cols()) throw UsageError("inverse of a non-square matrix");
    size_t n = a.rows();
    mpfr_prec_t p = a.prec();
    BallMat work = a.midpoints();
    BallMat inv = BallMat::identity(n, p);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        Real best = work.at(col, col).abs_upper();
        for (size_t r = col + 1; r < n; ++r) {
            Real cand = work.at(r, col).abs_upper();
            if (mpfr_cmp(cand.raw(), best.raw()) > 0) {
                best = cand;
                piv = r;
            }
        }
        if (mpfr_sgn(best.raw()) <= 0) throw MathError("midpoint matrix numerically singular");
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(work.at(piv, j), work.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Ball pivot_inv = work.at(col, col).inverse();
        for (size_t j = 0; j < n; ++j) {
            work.at(col, j) = work.at(col, j) * pivot_inv;
            inv.at(col, j) = inv.at(col, j) * pivot_inv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Ball f = work.at(r, col);
            if (f.is_exact_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                work.at(r, j) = work.at(r, j) - f * work.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv.midpoints();
}

namespace {

Real row_abs_sum(const BallMat& m, size_t i) {
    Real acc(kRadPrec);
    mpfr_set_zero(acc.raw(), 1);
    for (size_t j = 0; j < m.cols(); ++j) {
        Real a = m.at(i, j).abs_upper();
        mpfr_add(acc.raw(), acc.raw(), a.raw(), MPFR_RNDU);
    }
    return acc;
}

}  // namespace

BallMat ball_matrix_solve(const BallMat& a, const BallMat& y) {
    if (a.rows() != a.cols()) throw UsageError("solve requires a square matrix");
    if (a.rows() != y.rows()) throw UsageError("solve shape mismatch");
    size_t n = a.rows();
    mpfr_prec_t p = std::max(a.prec(), y.prec());

    BallMat r = approx_mid_inverse(a);
    BallMat x0 = (r * y.midpoints()).midpoints();

    // Contraction matrix over every member of the input balls.
    BallMat m = BallMat::identity(n, p) - r * a;
    Real beta(kRadPrec);
    mpfr_set_zero(beta.raw(), 1);
    std::vector<Real> msum;
    msum.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Real s = row_abs_sum(m, i);
        if (mpfr_cmp(s.raw(), beta.raw()) > 0) mpfr_set(beta.raw(), s.raw(), MPFR_RNDU);
        msum.push_back(std::move(s));
    }
    if (mpfr_cmp_ui(beta.raw(), 1) >= 0)
        throw PrecisionError("residual contraction not certified at working precision");
    Real one_minus(kRadPrec);
    mpfr_ui_sub(one_minus.raw(), 1, beta.raw(), MPFR_RNDD);

    // Defect of the approximate solution, again over every member.
    BallMat d = r * (y - a * x0);

    BallMat out = x0;
    for (size_t c = 0; c < y.cols(); ++c) {
        Real dmax(kRadPrec);
        mpfr_set_zero(dmax.raw(), 1);
        for (size_t i = 0; i < n; ++i) {
            Real du = d.at(i, c).abs_upper();
            if (mpfr_cmp(du.raw(), dmax.raw()) > 0) mpfr_set(dmax.raw(), du.raw(), MPFR_RNDU);
        }
        Real ecol(kRadPrec);
        mpfr_div(ecol.raw(), dmax.raw(), one_minus.raw(), MPFR_RNDU);
        for (size_t i = 0; i < n; ++i) {
            Real bound = d.at(i, c).abs_upper();
            Real t(kRadPrec);
            mpfr_mul(t.raw(), msum[i].raw(), ecol.raw(), MPFR_RNDU);
            mpfr_add(bound.raw(), bound.raw(), t.raw(), MPFR_RNDU);
            out.at(i, c).add_error(bound);
        }
    }
    return out;
}

bool ball_positive_definite(const BallMat& h) {
    if (h.rows() != h.cols()) return false;
    size_t n = h.rows();
    BallMat a = h;
    for (size_t k = 0; k < n; ++k) {
        const Ball& piv = a.at(k, k);
        Real lo(piv.prec());
        mpfr_sub(lo.raw(), piv.mid_re().raw(), piv.rad().raw(), MPFR_RNDD);
        if (mpfr_sgn(lo.raw()) <= 0) return false;
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a.at(i, j) = a.at(i, j) - a.at(i, k) * a.at(j, k).conj() / piv;
    }
    return true;
}

}  // namespace heights::numerics
