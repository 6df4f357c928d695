#include "oracle_quadrature.hpp"

#include <functional>
#include <future>
#include <vector>

#include "support/errors.hpp"

namespace heights::testoracle {
namespace {

using numerics::Ball;
using numerics::Real;

constexpr int kInnerNodes = 192;
constexpr long kAgreementBits = 104;

Ball unit_imag(mpfr_prec_t prec) { return Ball::from_mpq_complex(0, 1, prec); }

// exp(i pi q) for rational q.
Ball unit_phase(const mpq_class& q, mpfr_prec_t prec) {
    Ball arg = numerics::ball_pi(prec) * Ball::from_mpq(q, prec);
    return numerics::ball_cos(arg) + unit_imag(prec) * numerics::ball_sin(arg);
}

Ball quarter_root(const Ball& z) { return numerics::ball_sqrt(numerics::ball_sqrt(z)); }

// Tanh-sinh quadrature on [0,1]. Levels halve the step until two consecutive
// sums agree to kAgreementBits; the last difference is folded into the
// radius as the truncation estimate. Substitution s = 1/(1 + e^{-2w}),
// w = (pi/2) sinh(u), weight = pi cosh(u) s (1-s); node values at a coarser
// level are reused when the step is halved.
Ball tanh_sinh_unit(const std::function<Ball(const Ball&, const Ball&)>& f, mpfr_prec_t prec) {
    const double kCut = 6.0;
    Ball pi_b = numerics::ball_pi(prec);
    Ball half_pi = pi_b.scaled_2exp(-1);
    Ball one = Ball::from_int(1, prec);

    auto node_term = [&](const mpq_class& u_q) {
        Ball u = Ball::from_mpq(u_q, prec);
        Ball eu = numerics::ball_exp(u);
        Ball inv_eu = eu.inverse();
        Ball sinh_u = (eu - inv_eu).scaled_2exp(-1);
        Ball cosh_u = (eu + inv_eu).scaled_2exp(-1);
        Ball w = half_pi * sinh_u;
        Ball em = numerics::ball_exp(-(w + w));
        Ball s = (one + em).inverse();
        Ball oms = em * s;  // 1 - s without cancellation
        return f(s, oms) * (pi_b * cosh_u * s * oms);
    };

    Ball prev(prec);
    bool have_prev = false;
    Ball total(prec);
    for (int level = 3; level <= 7; ++level) {
        long denom = 1L << level;
        long span = static_cast<long>(kCut * denom);
        Ball sum(prec);
        bool fresh = !have_prev;
        for (long j = -span; j <= span; ++j) {
            if (!fresh && j % 2 == 0) continue;
            sum = sum + node_term(mpq_class(j, denom));
        }
        Ball h = Ball::from_mpq(mpq_class(1, denom), prec);
        total = fresh ? sum * h : prev.scaled_2exp(-1) + sum * h;
        if (have_prev) {
            Ball diff = total - prev;
            Real gap = diff.abs_upper();
            Real scale = total.abs_upper();
            mpfr_add_ui(scale.raw(), scale.raw(), 1, MPFR_RNDU);
            mpfr_mul_2si(scale.raw(), scale.raw(), -kAgreementBits, MPFR_RNDU);
            if (mpfr_cmp(gap.raw(), scale.raw()) <= 0) {
                total.add_error(gap);
                return total;
            }
            if (level == 7) total.add_error(gap);
        }
        prev = total;
        have_prev = true;
    }
    return total;
}

struct RowContext {
    std::vector<long> exps;
    int pole = 1;
    mpfr_prec_t prec = 0;
    std::vector<Ball> i_pow;    // i^c, c = 0..3
    std::vector<Ball> circle;   // kInnerNodes-th roots of unity
    Ball mu{64};                // exp(i pi / 4)
};

Ball monomial_xy(const RowContext& ctx, const Ball& x, const Ball& y) {
    Ball out = Ball::from_int(1, ctx.prec);
    for (long e = 0; e < ctx.exps[0]; ++e) out = out * x;
    for (long e = 0; e < ctx.exps[1]; ++e) out = out * y;
    return out;
}

// (1/2 pi i) oint A/F^pole dy around y0 on a circle of half the distance to
// the origin; the other roots of F(x,.) sit at i^j y0, a relative distance
// sqrt(2) away, so the trapezoid sum converges geometrically with ratio
// about 0.36. The tail below the agreement target is absorbed by a fixed
// slop proportional to the largest sample.
Ball residue_contour(const RowContext& ctx, const Ball& x, const Ball& y0) {
    Ball r = numerics::ball_sqrt((y0 * y0.conj()).real_part()).scaled_2exp(-1);
    Ball x4 = numerics::ball_pow_int(x, 4);
    Ball one = Ball::from_int(1, ctx.prec);
    Ball sum(ctx.prec);
    Real amax(numerics::kRadPrec);
    mpfr_set_zero(amax.raw(), 1);
    for (int j = 0; j < kInnerNodes; ++j) {
        Ball y = y0 + r * ctx.circle[j];
        Ball f = x4 + numerics::ball_pow_int(y, 4) + one;
        Ball den = ctx.pole == 2 ? f * f : f;
        Ball val = monomial_xy(ctx, x, y) / den;
        Real a = val.abs_upper();
        if (mpfr_cmp(a.raw(), amax.raw()) > 0) amax = a;
        sum = sum + val * ctx.circle[j];
    }
    Ball out = sum * r * Ball::from_mpq(mpq_class(1, kInnerNodes), ctx.prec);
    mpfr_mul_2si(amax.raw(), amax.raw(), -260, MPFR_RNDU);
    out.add_error(amax);
    return out;
}

// Arc integral for twist c = (c1, c2). Simple poles integrate the reduced
// form A/(4 y^3) dx over the whole arc; double poles stop at s = 1 - eps.
Ball arc_integral(const RowContext& ctx, int c1, int c2) {
    const Ball& tw1 = ctx.i_pow[c1 & 3];
    const Ball& tw2 = ctx.i_pow[c2 & 3];
    Ball tx = tw1 * ctx.mu;
    Ball ty = tw2 * ctx.mu;
    mpq_class eps(1, 4096);
    mpq_class scale_q = ctx.pole == 2 ? mpq_class(1) - eps : mpq_class(1);
    Ball scale = Ball::from_mpq(scale_q, ctx.prec);
    Ball quarter = Ball::from_mpq(mpq_class(1, 4), ctx.prec);
    Ball eps_b = Ball::from_mpq(eps, ctx.prec);

    auto f = [&](const Ball& sigma, const Ball& one_minus_sigma) {
        Ball s = scale * sigma;
        // 1 - (1-eps) sigma = (1 - sigma) + eps sigma: no cancellation near 1.
        Ball oms = ctx.pole == 2 ? one_minus_sigma + eps_b * sigma : one_minus_sigma;
        Ball qr = quarter_root(s);
        Ball x = tx * qr;
        Ball y0 = ty * quarter_root(oms);
        Ball res = ctx.pole == 1
                       ? monomial_xy(ctx, x, y0) / (numerics::ball_pow_int(y0, 3).scaled_2exp(2))
                       : residue_contour(ctx, x, y0);
        Ball dx = tx * quarter * qr / s;
        return res * dx * scale;
    };
    return tanh_sinh_unit(f, ctx.prec);
}

// Quarter-circle connector around the ramification point (i^{c1} mu, 0),
// from the sheet at angle a2 to the one at a2 + 1, radius eta = 2^-3 chosen
// so that eta^4 equals the arc truncation parameter.
Ball connector_integral(const RowContext& ctx, int c1, int a2) {
    Ball tw1 = ctx.i_pow[c1 & 3] * ctx.mu;
    Ball eta = Ball::from_mpq(mpq_class(1, 8), ctx.prec);
    Ball one = Ball::from_int(1, ctx.prec);
    Ball i_half_pi = unit_imag(ctx.prec) * numerics::ball_pi(ctx.prec).scaled_2exp(-1);

    auto f = [&](const Ball& u, const Ball&) {
        // y = mu eta exp(i pi (a2 + u)/2): split the phase so only the
        // u-dependent part is recomputed per node.
        Ball phase = numerics::ball_exp(i_half_pi * u);
        Ball y = ctx.mu * eta * ctx.i_pow[a2 & 3] * phase;
        Ball y3 = numerics::ball_pow_int(y, 3);
        Ball w = one + y * y3;
        Ball q = quarter_root(w);
        Ball x = tw1 * q;
        Ball res = residue_contour(ctx, x, y);
        Ball dxdy = tw1 * y3 / (q * q * q);
        Ball dydu = y * i_half_pi;
        return res * dxdy * dydu;
    };
    return tanh_sinh_unit(f, ctx.prec);
}

}  // namespace

std::vector<Ball> quartic_row_periods_quadrature(const std::vector<long>& exps, int pole,
                                                 mpfr_prec_t prec) {
    if (exps.size() != 3 || (pole != 1 && pole != 2))
        throw UsageError("quadrature oracle covers the quartic curve basis only");
    RowContext ctx;
    ctx.exps = exps;
    ctx.pole = pole;
    ctx.prec = prec;
    ctx.mu = unit_phase(mpq_class(1, 4), prec);
    for (int c = 0; c < 4; ++c) ctx.i_pow.push_back(unit_phase(mpq_class(c, 2), prec));
    for (int j = 0; j < kInnerNodes; ++j)
        ctx.circle.push_back(unit_phase(mpq_class(2 * j, kInnerNodes), prec));

    std::vector<std::future<Ball>> arc_jobs;
    for (int c1 = 0; c1 < 4; ++c1)
        for (int c2 = 0; c2 < 4; ++c2)
            arc_jobs.push_back(std::async(std::launch::async,
                                          [&ctx, c1, c2] { return arc_integral(ctx, c1, c2); }));
    std::vector<Ball> arcs;
    for (auto& j : arc_jobs) arcs.push_back(j.get());
    auto arc_at = [&](int c1, int c2) { return arcs[(c1 & 3) * 4 + (c2 & 3)]; };

    std::vector<Ball> connectors;
    if (pole == 2) {
        std::vector<std::future<Ball>> jobs;
        for (int c1 = 0; c1 < 4; ++c1)
            for (int a2 = 0; a2 < 3; ++a2)
                jobs.push_back(std::async(std::launch::async, [&ctx, c1, a2] {
                    return connector_integral(ctx, c1, a2);
                }));
        for (auto& j : jobs) connectors.push_back(j.get());
    }
    auto conn_at = [&](int c1, int a2) { return connectors[(c1 & 3) * 3 + a2]; };

    std::vector<Ball> out;
    for (int a1 = 0; a1 < 3; ++a1)
        for (int a2 = 0; a2 < 3; ++a2) {
            Ball cell = arc_at(a1, a2) - arc_at(a1 + 1, a2) - arc_at(a1, a2 + 1) +
                        arc_at(a1 + 1, a2 + 1);
            if (pole == 2) cell = cell + conn_at(a1, a2) - conn_at(a1 + 1, a2);
            out.push_back(cell);
        }
    return out;
}

}  // namespace heights::testoracle
