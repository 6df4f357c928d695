#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace heights::numerics {

// Thin RAII wrapper over mpfr_t. Precision is fixed at construction; every
// operation states its rounding direction at the call site.
class Real {
   public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }

   private:
    mpfr_t x_;
};

constexpr mpfr_prec_t kRadPrec = 32;
constexpr mpfr_prec_t kDefaultPrec = 512;

// Complex disk: arbitrary-precision midpoint, low-precision upward-rounded
// radius. Every operation returns a ball containing the exact image of the
// input disks; midpoint rounding is folded into the radius.
class Ball {
   public:
    explicit Ball(mpfr_prec_t prec);
    Ball(const Ball&) = default;
    Ball(Ball&&) noexcept = default;
    Ball& operator=(const Ball&) = default;
    Ball& operator=(Ball&&) noexcept = default;

    static Ball from_int(long v, mpfr_prec_t prec);
    static Ball from_mpq(const mpq_class& re, mpfr_prec_t prec);
    static Ball from_mpq_complex(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);
    // Decimal string midpoint (for test fixtures); containment slop added.
    static Ball from_decimal(const std::string& re, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return re_.prec(); }
    const Real& mid_re() const { return re_; }
    const Real& mid_im() const { return im_; }
    const Real& rad() const { return rad_; }
    Real& mutable_rad() { return rad_; }
    Real& mutable_re() { return re_; }
    Real& mutable_im() { return im_; }

    Ball operator+(const Ball& o) const;
    Ball operator-(const Ball& o) const;
    Ball operator*(const Ball& o) const;
    Ball operator/(const Ball& o) const;
    Ball operator-() const;
    Ball conj() const;
    Ball inverse() const;
    Ball scaled_2exp(long e) const;  // exact multiplication by 2^e

    // Upper and lower bounds for the modulus over the disk.
    Real abs_upper() const;
    Real abs_lower() const;  // zero when the disk contains 0

    bool contains_zero() const;
    bool is_exact_zero() const;
    bool contains(const Ball& o) const;             // every point of o lies in this ball
    bool intersects(const Ball& o) const;
    bool contains_mpq(const mpq_class& re, const mpq_class& im) const;

    Ball real_part() const;
    Ball imag_part() const;

    // Enlarges the radius by r (upward).
    void add_error(const Real& r);
    void add_error_2exp(long e);

    std::string to_string(size_t digits = 0) const;

   private:
    Real re_, im_, rad_;
};

// Elementary functions with derivative-bound radius propagation.
Ball ball_pi(mpfr_prec_t prec);
Ball ball_exp(const Ball& z);
// Requires 0 outside the disk. Returns the branch of log that is continuous
// on the disk and principal at the midpoint; callers keep evaluation points
// off the cut when the principal value itself is needed.
Ball ball_log(const Ball& z);
Ball ball_sqrt(const Ball& z);  // principal branch, disk off the cut
Ball ball_sin(const Ball& z);
Ball ball_cos(const Ball& z);
// Real Gamma at a positive rational, valid for arguments in [1/8, 8].
Ball ball_gamma_rational(const mpq_class& x, mpfr_prec_t prec);
Ball ball_pow_int(const Ball& z, long e);

std::string real_to_decimal(const Real& x, size_t digits, mpfr_rnd_t rnd);

}  // namespace heights::numerics
