#include "ode_transport/roots.hpp"

#include <algorithm>
#include <vector>

#include "support/errors.hpp"

namespace heights::ode_transport {
namespace {

using exactalg::QPoly;
using exactalg::ZPoly;
using numerics::Ball;
using numerics::Real;

// Midpoint-only complex arithmetic for the Durand-Kerner sweep; certification
// afterwards runs in full ball arithmetic.
struct CMid {
    Real re, im;
    explicit CMid(mpfr_prec_t prec) : re(prec), im(prec) {}
};

CMid cmul(const CMid& a, const CMid& b) {
    mpfr_prec_t p = a.re.prec();
    CMid out(p);
    Real t1(p), t2(p);
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(out.re.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(out.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    return out;
}

CMid csub(const CMid& a, const CMid& b) {
    CMid out(a.re.prec());
    mpfr_sub(out.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_sub(out.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    return out;
}

CMid cdiv(const CMid& a, const CMid& b) {
    mpfr_prec_t p = a.re.prec();
    Real n2(p), t1(p), t2(p);
    mpfr_mul(t1.raw(), b.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(n2.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    CMid out(p);
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(out.re.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(out.re.raw(), out.re.raw(), n2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(out.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(out.im.raw(), out.im.raw(), n2.raw(), MPFR_RNDN);
    return out;
}

// |z|^2 rounded to nearest.
Real cnorm2(const CMid& z) {
    mpfr_prec_t p = z.re.prec();
    Real out(p), t(p);
    mpfr_mul(out.raw(), z.re.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), z.im.raw(), z.im.raw(), MPFR_RNDN);
    mpfr_add(out.raw(), out.raw(), t.raw(), MPFR_RNDN);
    return out;
}

CMid horner(const std::vector<mpz_class>& coeffs, const CMid& z) {
    mpfr_prec_t p = z.re.prec();
    CMid acc(p);
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = cmul(acc, z);
        Real c(p);
        mpfr_set_z(c.raw(), coeffs[i].get_mpz_t(), MPFR_RNDN);
        mpfr_add(acc.re.raw(), acc.re.raw(), c.raw(), MPFR_RNDN);
    }
    return acc;
}

Ball horner_ball(const std::vector<mpz_class>& coeffs, const Ball& z) {
    Ball acc(z.prec());
    for (size_t i = coeffs.size(); i-- > 0;)
        acc = acc * z + Ball::from_mpq(mpq_class(coeffs[i]), z.prec());
    return acc;
}

// Square-free part p / gcd(p, p'), computed through exact rational division.
ZPoly square_free_part(const ZPoly& p) {
    ZPoly g = exactalg::zpoly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    QPoly num = exactalg::qpoly_from_z(p);
    QPoly den = exactalg::qpoly_from_z(g);
    // Long division; remainder must vanish.
    std::vector<mpq_class> rem(num.coeffs().begin(), num.coeffs().end());
    int dn = num.degree(), dd = den.degree();
    std::vector<mpq_class> quot(static_cast<size_t>(dn - dd + 1));
    for (int k = dn - dd; k >= 0; --k) {
        mpq_class c = rem[static_cast<size_t>(k + dd)] / den.coeffs().back();
        quot[static_cast<size_t>(k)] = c;
        for (int i = 0; i <= dd; ++i)
            rem[static_cast<size_t>(k + i)] -= c * den.coeffs()[static_cast<size_t>(i)];
    }
    return exactalg::zpoly_from_q(QPoly(std::move(quot)));
}

}  // namespace

std::vector<Ball> isolate_roots(const ZPoly& p, mpfr_prec_t prec) {
    if (p.is_zero()) throw UsageError("root isolation of the zero polynomial");
    ZPoly q = square_free_part(p);
    int n = q.degree();
    if (n <= 0) return {};
    const std::vector<mpz_class>& a = q.coeffs();

    // Cauchy bound 1 + max |a_i| / |a_n| on the root moduli.
    Real bound(64), t(64);
    mpfr_set_ui(bound.raw(), 0, MPFR_RNDN);
    for (int i = 0; i < n; ++i) {
        mpfr_set_z(t.raw(), a[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDA);
        mpfr_abs(t.raw(), t.raw(), MPFR_RNDU);
        if (mpfr_cmp(t.raw(), bound.raw()) > 0) mpfr_set(bound.raw(), t.raw(), MPFR_RNDU);
    }
    mpfr_set_z(t.raw(), a[static_cast<size_t>(n)].get_mpz_t(), MPFR_RNDZ);
    mpfr_abs(t.raw(), t.raw(), MPFR_RNDD);
    mpfr_div(bound.raw(), bound.raw(), t.raw(), MPFR_RNDU);
    mpfr_add_ui(bound.raw(), bound.raw(), 1, MPFR_RNDU);

    // Durand-Kerner from points spread on a circle of the bound radius, with
    // an irrational-ish angular offset so no start point sits on a root line.
    std::vector<CMid> z;
    z.reserve(static_cast<size_t>(n));
    mpfr_prec_t wp = prec + 64;
    Real angle(wp), pi(wp);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    for (int k = 0; k < n; ++k) {
        CMid zk(wp);
        mpfr_mul_si(angle.raw(), pi.raw(), 2 * k, MPFR_RNDN);
        mpfr_div_si(angle.raw(), angle.raw(), n, MPFR_RNDN);
        mpfr_add_d(angle.raw(), angle.raw(), 0.350129, MPFR_RNDN);
        mpfr_sin_cos(zk.im.raw(), zk.re.raw(), angle.raw(), MPFR_RNDN);
        mpfr_mul(zk.re.raw(), zk.re.raw(), bound.raw(), MPFR_RNDN);
        mpfr_mul(zk.im.raw(), zk.im.raw(), bound.raw(), MPFR_RNDN);
        z.push_back(zk);
    }

    // Convergence target on |delta|^2, relative to the root magnitude scale.
    Real target(64);
    mpfr_set_ui_2exp(target.raw(), 1, -2 * (prec / 2 + 16), MPFR_RNDN);
    Real bound2(64);
    mpfr_mul(bound2.raw(), bound.raw(), bound.raw(), MPFR_RNDU);
    mpfr_add_ui(bound2.raw(), bound2.raw(), 1, MPFR_RNDU);
    mpfr_mul(target.raw(), target.raw(), bound2.raw(), MPFR_RNDN);
    bool converged = false;
    Real worst(64);
    for (int iter = 0; iter < 600 && !converged; ++iter) {
        mpfr_set_ui(worst.raw(), 0, MPFR_RNDN);
        for (int k = 0; k < n; ++k) {
            CMid num = horner(a, z[static_cast<size_t>(k)]);
            CMid den(wp);
            mpfr_set_z(den.re.raw(), a[static_cast<size_t>(n)].get_mpz_t(), MPFR_RNDN);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                den = cmul(den, csub(z[static_cast<size_t>(k)], z[static_cast<size_t>(j)]));
            }
            CMid delta = cdiv(num, den);
            Real d2 = cnorm2(delta);
            if (mpfr_cmp(d2.raw(), worst.raw()) > 0) mpfr_set(worst.raw(), d2.raw(), MPFR_RNDU);
            mpfr_sub(z[static_cast<size_t>(k)].re.raw(), z[static_cast<size_t>(k)].re.raw(),
                     delta.re.raw(), MPFR_RNDN);
            mpfr_sub(z[static_cast<size_t>(k)].im.raw(), z[static_cast<size_t>(k)].im.raw(),
                     delta.im.raw(), MPFR_RNDN);
        }
        converged = mpfr_cmp(worst.raw(), target.raw()) <= 0;
    }
    if (!converged)
        throw MathError(
            "root refinement did not converge; increase the working precision and retry");

    // Interval Newton certification around each approximation.
    std::vector<mpz_class> da;
    for (int i = 1; i <= n; ++i) da.push_back(a[static_cast<size_t>(i)] * i);
    std::vector<Ball> out;
    for (int k = 0; k < n; ++k) {
        Ball center(prec);
        mpfr_set(center.mutable_re().raw(), z[static_cast<size_t>(k)].re.raw(), MPFR_RNDN);
        mpfr_set(center.mutable_im().raw(), z[static_cast<size_t>(k)].im.raw(), MPFR_RNDN);
        Real rho(numerics::kRadPrec);
        mpfr_set_ui_2exp(rho.raw(), 1, -(prec / 2), MPFR_RNDU);
        bool certified = false;
        for (int attempt = 0; attempt < 8 && !certified; ++attempt) {
            Ball disk = center;
            disk.add_error(rho);
            Ball dq = horner_ball(da, disk);
            Ball qc = horner_ball(a, center);
            Ball newton = center - qc / dq;
            Ball shiftb = newton - center;
            Real need(numerics::kRadPrec);
            mpfr_set(need.raw(), shiftb.abs_upper().raw(), MPFR_RNDU);
            if (mpfr_cmp(need.raw(), rho.raw()) < 0) {
                out.push_back(newton);
                certified = true;
            } else {
                mpfr_mul_2si(rho.raw(), rho.raw(), 2, MPFR_RNDU);
            }
        }
        if (!certified)
            throw MathError(
                "root isolation could not be certified; increase the working precision and retry");
    }

    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            Ball d = out[i] - out[j];
            if (mpfr_sgn(d.abs_lower().raw()) <= 0)
                throw MathError(
                    "isolating balls overlap; increase the working precision and retry");
        }

    std::sort(out.begin(), out.end(), [](const Ball& x, const Ball& y) {
        int c = mpfr_cmp(x.mid_re().raw(), y.mid_re().raw());
        if (c != 0) return c < 0;
        return mpfr_cmp(x.mid_im().raw(), y.mid_im().raw()) < 0;
    });
    return out;
}

}  // namespace heights::ode_transport
