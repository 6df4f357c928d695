#include "numerics/series.hpp"

#include <algorithm>

#include "support/errors.hpp"

namespace heights::numerics {

LogSeries::LogSeries(size_t order, int logs, mpfr_prec_t prec) {
    truncation_order = order;
    log_order = logs;
    coeff.assign(order, std::vector<Ball>(static_cast<size_t>(logs) + 1, Ball(prec)));
}

bool LogSeries::has_log_terms() const {
    for (const auto& row : coeff)
        for (size_t j = 1; j < row.size(); ++j)
            if (!row[j].is_exact_zero()) return true;
    return false;
}

mpfr_prec_t LogSeries::prec() const {
    if (!coeff.empty() && !coeff[0].empty()) return coeff[0][0].prec();
    return kDefaultPrec;
}

namespace {

// Upper bound of sum_j |c[m][j]| Lup^j at radius precision.
Real term_weight(const std::vector<Ball>& row, const Real& lup) {
    Real acc(kRadPrec);
    mpfr_set_zero(acc.raw(), 1);
    Real pw(kRadPrec);
    mpfr_set_ui(pw.raw(), 1, MPFR_RNDU);
    for (const auto& c : row) {
        Real a = c.abs_upper();
        Real t(kRadPrec);
        mpfr_mul(t.raw(), a.raw(), pw.raw(), MPFR_RNDU);
        mpfr_add(acc.raw(), acc.raw(), t.raw(), MPFR_RNDU);
        mpfr_mul(pw.raw(), pw.raw(), lup.raw(), MPFR_RNDU);
    }
    return acc;
}

}  // namespace

Ball eval_log_series(const LogSeries& s, const Ball& t) {
    if (s.truncation_order == 0 || s.coeff.empty()) throw UsageError("empty series");
    mpfr_prec_t p = std::max(s.prec(), t.prec());

    if (s.safety_radius > 0) {
        Real tu = t.abs_upper();
        Ball bound = Ball::from_mpq(s.safety_radius, p);
        Real blo(kRadPrec);
        mpfr_sub(blo.raw(), bound.mid_re().raw(), bound.rad().raw(), MPFR_RNDD);
        if (mpfr_cmp(tu.raw(), blo.raw()) >= 0)
            throw UsageError("evaluation point outside the declared safety radius");
    }

    bool logs = s.has_log_terms();
    Ball L(p);
    if (logs) {
        if (t.contains_zero()) throw MathError("log series evaluated at a ball containing zero");
        bool im_straddles = t.imag_part().contains_zero();
        Real re_hi(kRadPrec);
        mpfr_add(re_hi.raw(), t.mid_re().raw(), t.rad().raw(), MPFR_RNDU);
        if (im_straddles && mpfr_sgn(re_hi.raw()) < 0)
            throw MathError("log series evaluated across the branch cut");
        L = ball_log(t);
    }

    // Horner over descending powers of t on the log-collapsed coefficients.
    Ball value(p);
    for (size_t m = s.truncation_order; m-- > 0;) {
        Ball inner = s.coeff[m][0];
        if (logs) {
            Ball lp = L;
            for (size_t j = 1; j < s.coeff[m].size(); ++j) {
                inner = inner + s.coeff[m][j] * lp;
                if (j + 1 < s.coeff[m].size()) lp = lp * L;
            }
        }
        value = value * t + inner;
    }

    if (s.polynomial) return value;

    // Tail bound from the last quarter of retained orders.
    size_t window_start = (3 * s.truncation_order) / 4;
    if (window_start + 1 >= s.truncation_order && s.truncation_order >= 2)
        window_start = s.truncation_order - 2;
    Real tu = t.abs_upper();
    Real lup(kRadPrec);
    if (logs)
        lup = L.abs_upper();
    else
        mpfr_set_zero(lup.raw(), 1);

    std::vector<Real> a;
    Real tpow(kRadPrec);
    mpfr_set_ui(tpow.raw(), 1, MPFR_RNDU);
    {
        Real tmp(kRadPrec);
        for (size_t m = 0; m < window_start; ++m) {
            mpfr_mul(tmp.raw(), tpow.raw(), tu.raw(), MPFR_RNDU);
            mpfr_swap(tmp.raw(), tpow.raw());
        }
    }
    for (size_t m = window_start; m < s.truncation_order; ++m) {
        Real w = term_weight(s.coeff[m], lup);
        Real am(kRadPrec);
        mpfr_mul(am.raw(), w.raw(), tpow.raw(), MPFR_RNDU);
        a.push_back(std::move(am));
        Real tmp(kRadPrec);
        mpfr_mul(tmp.raw(), tpow.raw(), tu.raw(), MPFR_RNDU);
        mpfr_swap(tmp.raw(), tpow.raw());
    }

    bool all_zero = true;
    for (const auto& am : a)
        if (!am.is_zero()) all_zero = false;
    if (all_zero) return value;

    if (a.size() < 2)
        throw PrecisionError("too few retained orders to bound the series tail");

    // Geometric ratio: worst consecutive growth across the window.
    Real ratio(kRadPrec);
    mpfr_set_zero(ratio.raw(), 1);
    bool have_ratio = false;
    for (size_t i = 0; i + 1 < a.size(); ++i) {
        if (a[i].is_zero()) {
            if (!a[i + 1].is_zero())
                throw PrecisionError("series tail terms are not decaying");
            continue;
        }
        Real r(kRadPrec);
        mpfr_div(r.raw(), a[i + 1].raw(), a[i].raw(), MPFR_RNDU);
        if (!have_ratio || mpfr_cmp(r.raw(), ratio.raw()) > 0) mpfr_swap(ratio.raw(), r.raw());
        have_ratio = true;
    }
    if (!have_ratio) return value;

    Real nine_tenths(kRadPrec);
    mpfr_set_ui(nine_tenths.raw(), 9, MPFR_RNDN);
    mpfr_div_ui(nine_tenths.raw(), nine_tenths.raw(), 10, MPFR_RNDN);
    if (mpfr_cmp(ratio.raw(), nine_tenths.raw()) >= 0)
        throw PrecisionError("series tail terms are not decaying");

    Real amax(kRadPrec);
    mpfr_set_zero(amax.raw(), 1);
    for (const auto& am : a)
        if (mpfr_cmp(am.raw(), amax.raw()) > 0) mpfr_set(amax.raw(), am.raw(), MPFR_RNDU);

    // Remainder of the geometric majorant past the last retained order,
    // times the safety factor.
    Real one_minus(kRadPrec);
    mpfr_ui_sub(one_minus.raw(), 1, ratio.raw(), MPFR_RNDD);
    Real tail(kRadPrec);
    mpfr_mul(tail.raw(), amax.raw(), ratio.raw(), MPFR_RNDU);
    mpfr_div(tail.raw(), tail.raw(), one_minus.raw(), MPFR_RNDU);
    mpfr_mul_2si(tail.raw(), tail.raw(), 2, MPFR_RNDU);

    Ball out = value;
    out.add_error(tail);
    return out;
}

LogSeries theta_apply(const LogSeries& s) {
    LogSeries out = s;
    for (size_t m = 0; m < s.truncation_order; ++m) {
        size_t jmax = s.coeff[m].size();
        for (size_t j = 0; j < jmax; ++j) {
            Ball v = s.coeff[m][j] * Ball::from_int(static_cast<long>(m), s.prec());
            if (j + 1 < jmax)
                v = v + s.coeff[m][j + 1] * Ball::from_int(static_cast<long>(j) + 1, s.prec());
            out.coeff[m][j] = v;
        }
    }
    return out;
}

std::vector<Ball> derivative_values(const LogSeries& s, const Ball& t, size_t count) {
    std::vector<Ball> out;
    out.reserve(count);
    LogSeries cur = s;
    Ball tpow = Ball::from_int(1, t.prec());
    for (size_t j = 0; j < count; ++j) {
        if (j > 0) {
            // cur <- (theta - (j-1)) cur, so cur = theta(theta-1)...(theta-j+1) s.
            LogSeries next = theta_apply(cur);
            Ball shift = Ball::from_int(static_cast<long>(j) - 1, s.prec());
            for (size_t m = 0; m < cur.truncation_order; ++m)
                for (size_t l = 0; l < cur.coeff[m].size(); ++l)
                    next.coeff[m][l] = next.coeff[m][l] - shift * cur.coeff[m][l];
            cur = std::move(next);
            tpow = tpow * t;
        }
        Ball v = eval_log_series(cur, t);
        out.push_back(j == 0 ? v : v / tpow);
    }
    return out;
}

}  // namespace heights::numerics
