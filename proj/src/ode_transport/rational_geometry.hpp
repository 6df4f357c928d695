#pragma once

#include <gmpxx.h>

#include <vector>

#include "numerics/ball.hpp"

namespace heights::ode_transport {

// Exact dyadic value of an mpfr number.
inline mpq_class real_to_mpq(const numerics::Real& r) {
    if (mpfr_zero_p(r.raw())) return mpq_class(0);
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), r.raw());
    mpq_class q(z);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
    return q;
}

// floor(sqrt(x)) over the rationals in the sense q <= sqrt(x) < (num+1)/den:
// exact lower bound computed through an integer square root.
inline mpq_class rat_sqrt_lower(const mpq_class& x) {
    if (x <= 0) return mpq_class(0);
    mpz_class nd = x.get_num() * x.get_den();
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
    mpq_class out(s, x.get_den());
    out.canonicalize();
    return out;
}

inline mpq_class rat_sqrt_upper(const mpq_class& x) {
    if (x <= 0) return mpq_class(0);
    mpz_class nd = x.get_num() * x.get_den();
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
    if (s * s < nd) s += 1;
    mpq_class out(s, x.get_den());
    out.canonicalize();
    return out;
}

// Rational enclosure of an isolating ball: exact midpoint, radius rounded up.
struct RatDisk {
    mpq_class re, im, rad;
};

inline RatDisk rat_disk(const numerics::Ball& b) {
    RatDisk d;
    d.re = real_to_mpq(b.mid_re());
    d.im = real_to_mpq(b.mid_im());
    numerics::Real up(numerics::kRadPrec);
    mpfr_set(up.raw(), b.rad().raw(), MPFR_RNDU);
    d.rad = real_to_mpq(up);
    return d;
}

inline std::vector<RatDisk> rat_disks(const std::vector<numerics::Ball>& balls) {
    std::vector<RatDisk> out;
    out.reserve(balls.size());
    for (const auto& b : balls) out.push_back(rat_disk(b));
    return out;
}

// Squared distance from the segment [a, b] to the point c, all exact.
inline mpq_class segment_point_dist2(const mpq_class& are, const mpq_class& aim,
                                     const mpq_class& bre, const mpq_class& bim,
                                     const mpq_class& cre, const mpq_class& cim) {
    mpq_class ux = bre - are, uy = bim - aim;
    mpq_class vx = cre - are, vy = cim - aim;
    mpq_class uu = ux * ux + uy * uy;
    mpq_class lambda(0);
    if (uu != 0) {
        lambda = (vx * ux + vy * uy) / uu;
        if (lambda < 0) lambda = 0;
        if (lambda > 1) lambda = 1;
    }
    mpq_class dx = vx - lambda * ux, dy = vy - lambda * uy;
    return dx * dx + dy * dy;
}

}  // namespace heights::ode_transport
