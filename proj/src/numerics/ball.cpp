#include "numerics/ball.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "support/errors.hpp"

namespace heights::numerics {

namespace {

// Adds 2^e to r, rounding up.
void rad_add_2exp(Real& r, mpfr_exp_t e) {
    Real t(kRadPrec);
    mpfr_set_ui_2exp(t.raw(), 1, e, MPFR_RNDU);
    mpfr_add(r.raw(), r.raw(), t.raw(), MPFR_RNDU);
}

// Accumulates one full ulp of x (twice the worst correctly-rounded error)
// into r. A full ulp per operation leaves a comfortable margin over the
// half-ulp bound of each correctly rounded mpfr call.
void rad_add_ulp(Real& r, const Real& x) {
    if (x.is_zero()) return;
    rad_add_2exp(r, mpfr_get_exp(x.raw()) - x.prec());
}

void rad_add(Real& r, const Real& s) { mpfr_add(r.raw(), r.raw(), s.raw(), MPFR_RNDU); }

Real rad_mul(const Real& a, const Real& b) {
    Real out(kRadPrec);
    mpfr_mul(out.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return out;
}

// Upper bound of |(re, im)| at radius precision.
Real abs_upper_mid(const Real& re, const Real& im) {
    Real out(kRadPrec);
    mpfr_hypot(out.raw(), re.raw(), im.raw(), MPFR_RNDU);
    return out;
}

Real abs_lower_mid(const Real& re, const Real& im) {
    Real out(kRadPrec);
    mpfr_hypot(out.raw(), re.raw(), im.raw(), MPFR_RNDZ);
    // RNDZ on a nonnegative quantity rounds toward zero, which is downward.
    return out;
}

}  // namespace

Ball::Ball(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadPrec) {}

Ball Ball::from_int(long v, mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_si(b.re_.raw(), v, MPFR_RNDN);
    return b;
}

Ball Ball::from_mpq(const mpq_class& re, mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_q(b.re_.raw(), re.get_mpq_t(), MPFR_RNDN);
    rad_add_ulp(b.rad_, b.re_);
    return b;
}

Ball Ball::from_mpq_complex(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_q(b.re_.raw(), re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(b.im_.raw(), im.get_mpq_t(), MPFR_RNDN);
    rad_add_ulp(b.rad_, b.re_);
    rad_add_ulp(b.rad_, b.im_);
    return b;
}

Ball Ball::from_decimal(const std::string& re, mpfr_prec_t prec) {
    Ball b(prec);
    if (mpfr_set_str(b.re_.raw(), re.c_str(), 10, MPFR_RNDN) != 0)
        throw UsageError("bad decimal literal: " + re);
    rad_add_ulp(b.rad_, b.re_);
    return b;
}

Ball Ball::operator+(const Ball& o) const {
    Ball out(std::max(prec(), o.prec()));
    mpfr_add(out.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_add(out.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_add(out.rad_.raw(), rad_.raw(), o.rad_.raw(), MPFR_RNDU);
    rad_add_ulp(out.rad_, out.re_);
    rad_add_ulp(out.rad_, out.im_);
    return out;
}

Ball Ball::operator-(const Ball& o) const {
    Ball out(std::max(prec(), o.prec()));
    mpfr_sub(out.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_sub(out.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_add(out.rad_.raw(), rad_.raw(), o.rad_.raw(), MPFR_RNDU);
    rad_add_ulp(out.rad_, out.re_);
    rad_add_ulp(out.rad_, out.im_);
    return out;
}

Ball Ball::operator-() const {
    Ball out = *this;
    mpfr_neg(out.re_.raw(), out.re_.raw(), MPFR_RNDN);
    mpfr_neg(out.im_.raw(), out.im_.raw(), MPFR_RNDN);
    return out;
}

Ball Ball::conj() const {
    Ball out = *this;
    mpfr_neg(out.im_.raw(), out.im_.raw(), MPFR_RNDN);
    return out;
}

Ball Ball::operator*(const Ball& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Ball out(p);
    Real t1(p), t2(p);
    // Real part: ar*br - ai*bi.
    mpfr_mul(t1.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_sub(out.re_.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    rad_add_ulp(out.rad_, t1);
    rad_add_ulp(out.rad_, t2);
    rad_add_ulp(out.rad_, out.re_);
    // Imaginary part: ar*bi + ai*br.
    mpfr_mul(t1.raw(), re_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), im_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_add(out.im_.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    rad_add_ulp(out.rad_, t1);
    rad_add_ulp(out.rad_, t2);
    rad_add_ulp(out.rad_, out.im_);
    // Disk propagation: |a| rb + |b| ra + ra rb.
    Real au = abs_upper_mid(re_, im_), bu = abs_upper_mid(o.re_, o.im_);
    rad_add(out.rad_, rad_mul(au, o.rad_));
    rad_add(out.rad_, rad_mul(bu, rad_));
    rad_add(out.rad_, rad_mul(rad_, o.rad_));
    return out;
}

Ball Ball::inverse() const {
    mpfr_prec_t p = prec();
    Real mlo = abs_lower_mid(re_, im_);
    Real gap(kRadPrec);
    mpfr_sub(gap.raw(), mlo.raw(), rad_.raw(), MPFR_RNDD);
    if (mpfr_sgn(gap.raw()) <= 0) throw MathError("division by a ball containing zero");

    Ball out(p);
    // Midpoint: conj(m) / |m|^2.
    Real d(p), t(p);
    mpfr_mul(d.raw(), re_.raw(), re_.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), im_.raw(), im_.raw(), MPFR_RNDN);
    mpfr_add(d.raw(), d.raw(), t.raw(), MPFR_RNDN);
    mpfr_div(out.re_.raw(), re_.raw(), d.raw(), MPFR_RNDN);
    mpfr_div(out.im_.raw(), im_.raw(), d.raw(), MPFR_RNDN);
    mpfr_neg(out.im_.raw(), out.im_.raw(), MPFR_RNDN);

    // Midpoint error via the residual |m~ * m - 1| / |m|, evaluated in exact
    // ball arithmetic on zero-radius copies.
    Ball approx(p);
    approx.re_ = out.re_;
    approx.im_ = out.im_;
    Ball mid_only(p);
    mid_only.re_ = re_;
    mid_only.im_ = im_;
    Ball resid = approx * mid_only - Ball::from_int(1, p);
    Real resid_up = resid.abs_upper();
    Real mid_err(kRadPrec);
    mpfr_div(mid_err.raw(), resid_up.raw(), mlo.raw(), MPFR_RNDU);
    rad_add(out.rad_, mid_err);

    // Disk propagation: r / (|m| (|m| - r)).
    Real prop(kRadPrec);
    mpfr_mul(prop.raw(), mlo.raw(), gap.raw(), MPFR_RNDD);
    mpfr_div(prop.raw(), rad_.raw(), prop.raw(), MPFR_RNDU);
    rad_add(out.rad_, prop);
    return out;
}

Ball Ball::operator/(const Ball& o) const { return *this * o.inverse(); }

Ball Ball::scaled_2exp(long e) const {
    Ball out = *this;
    mpfr_mul_2si(out.re_.raw(), out.re_.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(out.im_.raw(), out.im_.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(out.rad_.raw(), out.rad_.raw(), e, MPFR_RNDU);
    return out;
}

Real Ball::abs_upper() const {
    Real out = abs_upper_mid(re_, im_);
    mpfr_add(out.raw(), out.raw(), rad_.raw(), MPFR_RNDU);
    return out;
}

Real Ball::abs_lower() const {
    Real out = abs_lower_mid(re_, im_);
    mpfr_sub(out.raw(), out.raw(), rad_.raw(), MPFR_RNDD);
    if (mpfr_sgn(out.raw()) < 0) mpfr_set_zero(out.raw(), 1);
    return out;
}

bool Ball::contains_zero() const {
    Real lo = abs_lower();
    return mpfr_sgn(lo.raw()) <= 0;
}

bool Ball::is_exact_zero() const { return re_.is_zero() && im_.is_zero() && rad_.is_zero(); }

bool Ball::contains(const Ball& o) const {
    // |mid_o - mid| + rad_o <= rad
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real dre(p), dim(p);
    mpfr_sub(dre.raw(), o.re_.raw(), re_.raw(), MPFR_RNDA);
    mpfr_sub(dim.raw(), o.im_.raw(), im_.raw(), MPFR_RNDA);
    Real dist(kRadPrec);
    mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDU);
    mpfr_add(dist.raw(), dist.raw(), o.rad_.raw(), MPFR_RNDU);
    return mpfr_cmp(dist.raw(), rad_.raw()) <= 0;
}

bool Ball::intersects(const Ball& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real dre(p), dim(p);
    mpfr_sub(dre.raw(), o.re_.raw(), re_.raw(), MPFR_RNDZ);
    mpfr_sub(dim.raw(), o.im_.raw(), im_.raw(), MPFR_RNDZ);
    Real dist(kRadPrec);
    mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDZ);
    Real reach(kRadPrec);
    mpfr_add(reach.raw(), rad_.raw(), o.rad_.raw(), MPFR_RNDU);
    // Distance computed with some downward slack; intersection is judged
    // permissively, which is the safe direction for consistency checks.
    return mpfr_cmp(dist.raw(), reach.raw()) <= 0;
}

bool Ball::contains_mpq(const mpq_class& re, const mpq_class& im) const {
    Ball v = Ball::from_mpq_complex(re, im, prec() + 64);
    return contains(v);
}

Ball Ball::real_part() const {
    Ball out(prec());
    out.re_ = re_;
    out.rad_ = rad_;
    return out;
}

Ball Ball::imag_part() const {
    Ball out(prec());
    out.re_ = im_;
    out.rad_ = rad_;
    return out;
}

void Ball::add_error(const Real& r) { rad_add(rad_, r); }

void Ball::add_error_2exp(long e) { rad_add_2exp(rad_, e); }

std::string real_to_decimal(const Real& x, size_t digits, mpfr_rnd_t rnd) {
    if (x.is_zero()) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, x.raw(), rnd);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string digits_part = neg ? mant.substr(1) : mant;
    // Normalized scientific form d.ddd...e(exp-1).
    std::string out = (neg ? "-" : "") + digits_part.substr(0, 1);
    if (digits_part.size() > 1) out += "." + digits_part.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

std::string Ball::to_string(size_t digits) const {
    if (digits == 0) digits = static_cast<size_t>(static_cast<double>(prec()) * 0.302) + 2;
    return real_to_decimal(re_, digits, MPFR_RNDN) + " " + real_to_decimal(im_, digits, MPFR_RNDN) +
           " +/- " + real_to_decimal(rad_, 3, MPFR_RNDU);
}

Ball ball_pi(mpfr_prec_t prec) {
    Ball out(prec);
    mpfr_const_pi(out.mutable_re().raw(), MPFR_RNDN);
    out.add_error_2exp(2 - prec);
    return out;
}

Ball ball_exp(const Ball& z) {
    mpfr_prec_t p = z.prec();
    Ball out(p);
    Real t(p), c(p), s(p);
    mpfr_exp(t.raw(), z.mid_re().raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), z.mid_im().raw(), MPFR_RNDN);
    mpfr_mul(out.mutable_re().raw(), t.raw(), c.raw(), MPFR_RNDN);
    mpfr_mul(out.mutable_im().raw(), t.raw(), s.raw(), MPFR_RNDN);
    // Five correctly rounded operations on quantities of magnitude <= |e^z|;
    // fold in eight ulps of the larger component.
    Real am = out.mid_re().is_zero() ? out.mid_im() : out.mid_re();
    if (!out.mid_re().is_zero() && !out.mid_im().is_zero())
        am = mpfr_cmpabs(out.mid_re().raw(), out.mid_im().raw()) >= 0 ? out.mid_re() : out.mid_im();
    if (!am.is_zero()) out.add_error_2exp(mpfr_get_exp(am.raw()) - p + 3);
    // Disk propagation: |exp(m)| (e^r - 1).
    Real mag = abs_upper_mid(out.mid_re(), out.mid_im());
    Real er(kRadPrec);
    mpfr_expm1(er.raw(), z.rad().raw(), MPFR_RNDU);
    out.add_error(rad_mul(mag, er));
    return out;
}

Ball ball_log(const Ball& z) {
    mpfr_prec_t p = z.prec();
    Real mlo = abs_lower_mid(z.mid_re(), z.mid_im());
    Real gap(kRadPrec);
    mpfr_sub(gap.raw(), mlo.raw(), z.rad().raw(), MPFR_RNDD);
    if (mpfr_sgn(gap.raw()) <= 0) throw MathError("log of a ball containing zero");
    Ball out(p);
    Real h(p);
    mpfr_hypot(h.raw(), z.mid_re().raw(), z.mid_im().raw(), MPFR_RNDN);
    mpfr_log(out.mutable_re().raw(), h.raw(), MPFR_RNDN);
    mpfr_atan2(out.mutable_im().raw(), z.mid_im().raw(), z.mid_re().raw(), MPFR_RNDN);
    // hypot+log+atan2, each correctly rounded; the hypot rounding feeds into
    // log with derivative 1/|m| <= 1/gap.
    rad_add_ulp(out.mutable_rad(), out.mid_re());
    rad_add_ulp(out.mutable_rad(), out.mid_im());
    Real hulp(kRadPrec);
    mpfr_set_zero(hulp.raw(), 1);
    rad_add_ulp(hulp, h);
    Real hprop(kRadPrec);
    mpfr_div(hprop.raw(), hulp.raw(), gap.raw(), MPFR_RNDU);
    out.add_error(hprop);
    // Disk propagation: |log(z) - log(m)| <= -log(1 - r/|m|).
    Real q(kRadPrec);
    mpfr_div(q.raw(), z.rad().raw(), mlo.raw(), MPFR_RNDU);
    if (mpfr_cmp_ui(q.raw(), 1) >= 0) throw MathError("log of a ball containing zero");
    Real l(kRadPrec);
    mpfr_neg(q.raw(), q.raw(), MPFR_RNDD);
    mpfr_log1p(l.raw(), q.raw(), MPFR_RNDD);
    mpfr_neg(l.raw(), l.raw(), MPFR_RNDU);
    out.add_error(l);
    return out;
}

Ball ball_sqrt(const Ball& z) {
    mpfr_prec_t p = z.prec();
    // The disk must stay off the closed negative real axis, where the
    // principal branch jumps. Distance from the midpoint to that ray:
    // |im| when re >= 0, |z| otherwise.
    Real cut(kRadPrec);
    if (mpfr_sgn(z.mid_re().raw()) >= 0)
        mpfr_hypot(cut.raw(), z.mid_re().raw(), z.mid_im().raw(), MPFR_RNDD);
    else
        mpfr_abs(cut.raw(), z.mid_im().raw(), MPFR_RNDD);
    if (mpfr_cmp(cut.raw(), z.rad().raw()) <= 0)
        throw MathError("square root of a disk touching the cut");

    // Midpoint square root: u = sqrt((|z| + |re|)/2) is the larger output
    // component, the other is |im| / (2u); signs restore the half plane.
    Real mag(p), u(p), v(p);
    mpfr_hypot(mag.raw(), z.mid_re().raw(), z.mid_im().raw(), MPFR_RNDN);
    Real are(p);
    mpfr_abs(are.raw(), z.mid_re().raw(), MPFR_RNDN);
    mpfr_add(u.raw(), mag.raw(), are.raw(), MPFR_RNDN);
    mpfr_mul_2si(u.raw(), u.raw(), -1, MPFR_RNDN);
    mpfr_sqrt(u.raw(), u.raw(), MPFR_RNDN);
    if (mpfr_zero_p(z.mid_im().raw()) && mpfr_sgn(z.mid_re().raw()) > 0) {
        mpfr_set_zero(v.raw(), 1);
    } else {
        mpfr_abs(v.raw(), z.mid_im().raw(), MPFR_RNDN);
        mpfr_div(v.raw(), v.raw(), u.raw(), MPFR_RNDN);
        mpfr_mul_2si(v.raw(), v.raw(), -1, MPFR_RNDN);
    }
    Ball out(p);
    if (mpfr_sgn(z.mid_re().raw()) >= 0) {
        mpfr_set(out.mutable_re().raw(), u.raw(), MPFR_RNDN);
        mpfr_set(out.mutable_im().raw(), v.raw(), MPFR_RNDN);
    } else {
        mpfr_set(out.mutable_re().raw(), v.raw(), MPFR_RNDN);
        mpfr_set(out.mutable_im().raw(), u.raw(), MPFR_RNDN);
    }
    if (mpfr_sgn(z.mid_im().raw()) < 0)
        mpfr_neg(out.mutable_im().raw(), out.mutable_im().raw(), MPFR_RNDN);
    // Five correctly rounded operations; u dominates the result size.
    out.add_error_2exp(mpfr_get_exp(u.raw()) - p + 3);

    // Derivative bound over the disk: 1/(2 sqrt(min |z|)).
    Real lo(kRadPrec);
    mpfr_hypot(lo.raw(), z.mid_re().raw(), z.mid_im().raw(), MPFR_RNDD);
    mpfr_sub(lo.raw(), lo.raw(), z.rad().raw(), MPFR_RNDD);
    if (mpfr_sgn(lo.raw()) <= 0) throw MathError("square root of a disk touching the cut");
    Real d(kRadPrec);
    mpfr_sqrt(d.raw(), lo.raw(), MPFR_RNDD);
    mpfr_mul_2si(d.raw(), d.raw(), 1, MPFR_RNDD);
    Real prop(kRadPrec);
    mpfr_div(prop.raw(), z.rad().raw(), d.raw(), MPFR_RNDU);
    out.add_error(prop);
    return out;
}

namespace {

// Shared implementation: complex sine and cosine with a cosh derivative
// bound over the disk.
Ball sincos_ball(const Ball& z, bool want_sin) {
    mpfr_prec_t p = z.prec();
    Ball out(p);
    Real s(p), c(p), sh(p), ch(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.mid_re().raw(), MPFR_RNDN);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), z.mid_im().raw(), MPFR_RNDN);
    if (want_sin) {
        mpfr_mul(out.mutable_re().raw(), s.raw(), ch.raw(), MPFR_RNDN);
        mpfr_mul(out.mutable_im().raw(), c.raw(), sh.raw(), MPFR_RNDN);
    } else {
        mpfr_mul(out.mutable_re().raw(), c.raw(), ch.raw(), MPFR_RNDN);
        mpfr_mul(out.mutable_im().raw(), s.raw(), sh.raw(), MPFR_RNDN);
        mpfr_neg(out.mutable_im().raw(), out.mutable_im().raw(), MPFR_RNDN);
    }
    rad_add_ulp(out.mutable_rad(), out.mid_re());
    rad_add_ulp(out.mutable_rad(), out.mid_im());
    // Each product propagates up to two ulps of cosh(Im) from its rounded
    // factors; cover both products with four.
    out.add_error_2exp(mpfr_get_exp(ch.raw()) - p + 2);
    // Derivative bound over the disk: cosh(|Im| + r).
    Real b(kRadPrec);
    mpfr_abs(b.raw(), z.mid_im().raw(), MPFR_RNDU);
    mpfr_add(b.raw(), b.raw(), z.rad().raw(), MPFR_RNDU);
    mpfr_cosh(b.raw(), b.raw(), MPFR_RNDU);
    out.add_error(rad_mul(b, z.rad()));
    return out;
}

}  // namespace

Ball ball_sin(const Ball& z) { return sincos_ball(z, true); }
Ball ball_cos(const Ball& z) { return sincos_ball(z, false); }

Ball ball_gamma_rational(const mpq_class& x, mpfr_prec_t prec) {
    // Valid on [1/8, 8] where |Gamma'| < 2^14; arguments here come from
    // hypergeometric-style parameter lists bounded well inside that window.
    if (x <= mpq_class(1, 8) || x >= 8) throw UsageError("Gamma argument outside supported window");
    Ball out(prec);
    Real m(prec);
    mpfr_set_q(m.raw(), x.get_mpq_t(), MPFR_RNDN);
    // Input representation error.
    Real in_err(kRadPrec);
    mpfr_set_zero(in_err.raw(), 1);
    rad_add_ulp(in_err, m);
    mpfr_gamma(out.mutable_re().raw(), m.raw(), MPFR_RNDN);
    rad_add_ulp(out.mutable_rad(), out.mid_re());
    mpfr_mul_2si(in_err.raw(), in_err.raw(), 14, MPFR_RNDU);
    out.add_error(in_err);
    return out;
}

Ball ball_pow_int(const Ball& z, long e) {
    if (e == 0) return Ball::from_int(1, z.prec());
    Ball base = e > 0 ? z : z.inverse();
    unsigned long n = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Ball acc = Ball::from_int(1, z.prec());
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

}  // namespace heights::numerics
