#include "ode_transport/transport.hpp"

#include <utility>

#include "numerics/series.hpp"
#include "ode_transport/rational_geometry.hpp"
#include "support/errors.hpp"

namespace heights::ode_transport {
namespace {

using exactalg::ZPoly;
using numerics::Ball;
using numerics::BallMat;

mpq_class point_norm2(const GaussianRational& p) { return p.re * p.re + p.im * p.im; }

mpq_class dist2(const GaussianRational& p, const RatDisk& d) {
    mpq_class dx = p.re - d.re, dy = p.im - d.im;
    return dx * dx + dy * dy;
}

bool inside_disk(const GaussianRational& p, const RatDisk& d) {
    return dist2(p, d) <= d.rad * d.rad;
}

// Rational lower bound for the distance from p to the nearest disk.
mpq_class nearest_distance_lb(const GaussianRational& p, const std::vector<RatDisk>& disks) {
    mpq_class best(-1);
    for (const auto& d : disks) {
        mpq_class v = rat_sqrt_lower(dist2(p, d)) - d.rad;
        if (best < 0 || v < best) best = v;
    }
    return best;
}

// Round to the grid (1/2^k) Z[i]; used to keep detour waypoint heights small.
GaussianRational snap(const GaussianRational& p, unsigned long k) {
    auto round_one = [&](const mpq_class& x) {
        mpq_class scaled = x;
        mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), k);
        mpz_class n = scaled.get_num(), d = scaled.get_den(), q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (r * 2 >= d) q += 1;
        mpq_class out(q);
        mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), k);
        return out;
    };
    return {round_one(p.re), round_one(p.im)};
}

struct Planner {
    const std::vector<RatDisk>& disks;
    mpq_class clearance;
    unsigned long grid_bits;
    int waypoint_budget = 24;

    // Appends the interior waypoints and endpoint of a clear route a -> b.
    std::vector<GaussianRational> route(const GaussianRational& a, const GaussianRational& b,
                                        int depth) {
        if (--waypoint_budget < 0)
            throw MathError("path planning exceeded the waypoint budget at this clearance");
        size_t blocker = disks.size();
        mpq_class worst;
        for (size_t i = 0; i < disks.size(); ++i) {
            mpq_class rho = clearance + disks[i].rad;
            mpq_class d2 =
                segment_point_dist2(a.re, a.im, b.re, b.im, disks[i].re, disks[i].im);
            if (d2 < rho * rho) {
                mpq_class gap = rho * rho - d2;
                if (blocker == disks.size() || gap > worst) {
                    blocker = i;
                    worst = gap;
                }
            }
        }
        if (blocker == disks.size()) return {b};
        if (depth >= 8)
            throw MathError("path planning failed: detours exceed the recursion depth");

        const RatDisk& s = disks[blocker];
        mpq_class ux = b.re - a.re, uy = b.im - a.im;
        mpq_class uu = ux * ux + uy * uy;
        if (uu == 0) throw MathError("path planning failed: endpoint inside a blocked zone");
        mpq_class lambda = ((s.re - a.re) * ux + (s.im - a.im) * uy) / uu;
        if (lambda < 0) lambda = 0;
        if (lambda > 1) lambda = 1;
        GaussianRational foot(a.re + lambda * ux, a.im + lambda * uy);
        mpq_class rho = clearance + s.rad;
        // Offset of length >= 3 rho along +-i (b-a): kappa |b-a| >= 3 rho.
        mpq_class kappa = rat_sqrt_upper(9 * rho * rho / uu);

        for (int side = 0; side < 2; ++side) {
            mpq_class sign = side == 0 ? 1 : -1;
            GaussianRational w =
                snap({foot.re - sign * kappa * uy, foot.im + sign * kappa * ux}, grid_bits);
            bool ok = true;
            for (const auto& d : disks) {
                mpq_class need = clearance + d.rad;
                if (dist2(w, d) <= need * need) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            int saved = waypoint_budget;
            try {
                std::vector<GaussianRational> left = route(a, w, depth + 1);
                std::vector<GaussianRational> right = route(w, b, depth + 1);
                left.insert(left.end(), right.begin(), right.end());
                return left;
            } catch (const MathError&) {
                if (side == 1) throw;
                waypoint_budget = saved;
            }
        }
        throw MathError("path planning failed: no clear detour on either side");
    }
};

// Shifted coefficients q(z + h) of an integer polynomial at an exact complex
// rational point, by synthetic division.
std::vector<std::pair<mpq_class, mpq_class>> complex_shift(const ZPoly& q,
                                                           const GaussianRational& z) {
    size_t n = q.coeffs().size();
    std::vector<std::pair<mpq_class, mpq_class>> work(n);
    for (size_t i = 0; i < n; ++i) work[i] = {mpq_class(q.coeffs()[i]), mpq_class(0)};
    std::vector<std::pair<mpq_class, mpq_class>> out;
    out.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        for (size_t i = n - 1; i > k; --i) {
            work[i - 1].first += work[i].first * z.re - work[i].second * z.im;
            work[i - 1].second += work[i].first * z.im + work[i].second * z.re;
        }
        out.push_back(work[k]);
    }
    return out;
}

// One Taylor step: jets of the r fundamental solutions carried from p to
// p + h, valid while |h| is at most half the distance R to the singularities.
BallMat taylor_step(const gd::PicardFuchsOperator& op, const GaussianRational& p,
                    const GaussianRational& h, const mpq_class& radius_lb, mpfr_prec_t prec) {
    int r = op.order();
    size_t terms = static_cast<size_t>(prec) + 96;

    // Local coefficient polynomials around p as balls.
    std::vector<std::vector<Ball>> loc(static_cast<size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
        auto shifted = complex_shift(op.coeffs[static_cast<size_t>(k)], p);
        loc[static_cast<size_t>(k)].reserve(shifted.size());
        for (auto& c : shifted)
            loc[static_cast<size_t>(k)].push_back(Ball::from_mpq_complex(c.first, c.second, prec));
    }
    const std::vector<Ball>& lead = loc[static_cast<size_t>(r)];
    Ball lead0_inv = lead[0].inverse();

    Ball hball = Ball::from_mpq_complex(h.re, h.im, prec);
    BallMat out(static_cast<size_t>(r), static_cast<size_t>(r), prec);

    for (int init = 0; init < r; ++init) {
        // Taylor coefficients c_j of the solution with unit j-th derivative.
        std::vector<Ball> c(terms + static_cast<size_t>(r), Ball(prec));
        mpz_class fact(1);
        for (int j = 1; j <= init; ++j) fact *= j;
        c[static_cast<size_t>(init)] = Ball::from_mpq(mpq_class(1, fact), prec);

        for (size_t m = 0; m + static_cast<size_t>(r) < c.size(); ++m) {
            // Sum over k and i with i + j = m of b_{k,i} c_{j+k} (j+k)!/j!,
            // excluding (k, i) = (r, 0) which carries the unknown.
            Ball acc(prec);
            for (int k = 0; k <= r; ++k) {
                const auto& bk = loc[static_cast<size_t>(k)];
                if (bk.empty()) continue;
                size_t imax = std::min(bk.size() - 1, m);
                for (size_t i = k == r ? 1 : 0; i <= imax; ++i) {
                    size_t j = m - i;
                    mpz_class ff(1);
                    for (int v = 0; v < k; ++v) ff *= mpz_class(static_cast<long>(j) + k - v);
                    acc = acc + bk[i] * c[j + static_cast<size_t>(k)] * Ball::from_mpq(mpq_class(ff), prec);
                }
            }
            mpz_class ff(1);
            for (int v = 0; v < r; ++v) ff *= mpz_class(static_cast<long>(m) + r - v);
            c[m + static_cast<size_t>(r)] =
                -(acc * lead0_inv) / Ball::from_mpq(mpq_class(ff), prec);
        }

        numerics::LogSeries series(terms, 0, prec);
        for (size_t m = 0; m < terms; ++m) series.at(m, 0) = c[m];
        series.safety_radius = radius_lb;
        std::vector<Ball> jet = numerics::derivative_values(series, hball, static_cast<size_t>(r));
        for (int k = 0; k < r; ++k) out.at(static_cast<size_t>(k), static_cast<size_t>(init)) = jet[static_cast<size_t>(k)];
    }
    return out;
}

}  // namespace

SingularitySet singularities(const gd::PicardFuchsOperator& op, mpfr_prec_t prec) {
    if (op.coeffs.empty() || op.coeffs.back().is_zero())
        throw UsageError("operator has no leading coefficient");
    SingularitySet out;
    const ZPoly& lead = op.coeffs.back();
    if (lead.degree() >= 1) out.points = isolate_roots(lead, prec);
    out.zero_singular = lead[0] == 0;
    int r = op.order();
    out.infinity_singular = false;
    for (int k = 0; k < r; ++k) {
        const ZPoly& pk = op.coeffs[static_cast<size_t>(k)];
        if (pk.is_zero()) continue;
        if (pk.degree() > lead.degree() - 2 * (r - k)) out.infinity_singular = true;
    }
    return out;
}

PathPlan plan_path(const GaussianRational& from, const GaussianRational& to,
                   const SingularitySet& sing, const mpq_class& clearance) {
    std::vector<RatDisk> disks = rat_disks(sing.points);

    for (const auto& d : disks)
        if (inside_disk(from, d))
            throw UsageError("path start lies inside a singularity region");

    GaussianRational target = to;
    bool zero_target = to.re == 0 && to.im == 0;
    bool zero_blocked = false;
    for (const auto& d : disks)
        if (inside_disk({mpq_class(0), mpq_class(0)}, d)) zero_blocked = true;
    if (zero_target && (zero_blocked || sing.zero_singular)) {
        // Swap the singular origin for a positive real matching point inside
        // the local disk of convergence (limited by the nearest other
        // singularity) and no farther out than the start point.
        mpq_class r0(-1);
        for (const auto& d : disks) {
            if (inside_disk({mpq_class(0), mpq_class(0)}, d)) continue;
            mpq_class lb = rat_sqrt_lower(d.re * d.re + d.im * d.im) - d.rad;
            if (r0 < 0 || lb < r0) r0 = lb;
        }
        mpq_class cap = rat_sqrt_lower(point_norm2(from));
        if (r0 > 0 && r0 / 2 < cap) cap = r0 / 2;
        if (cap <= 0) throw MathError("no room for a matching point near the origin");
        mpq_class m(1);
        while (m > cap) m /= 2;
        while (m * 2 <= cap) m *= 2;
        target = GaussianRational(m, mpq_class(0));
    } else {
        for (const auto& d : disks)
            if (inside_disk(target, d))
                throw UsageError("path target lies inside a singularity region");
    }

    PathPlan plan;
    plan.clearance = clearance;
    if (from == target) {
        plan.waypoints.push_back(from);
        if (plan.clearance <= 0) plan.clearance = 1;
        return plan;
    }
    if (plan.clearance <= 0) {
        // Default: 1/8 of the least pairwise distance among singularities
        // and the two endpoints.
        std::vector<GaussianRational> pts;
        for (const auto& d : disks) pts.emplace_back(d.re, d.im);
        pts.push_back(from);
        pts.push_back(target);
        mpq_class d2min(-1);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                mpq_class dx = pts[i].re - pts[j].re, dy = pts[i].im - pts[j].im;
                mpq_class d2 = dx * dx + dy * dy;
                if (d2 == 0) continue;
                if (d2min < 0 || d2 < d2min) d2min = d2;
            }
        if (d2min <= 0) throw MathError("cannot derive a default clearance");
        plan.clearance = rat_sqrt_lower(d2min) / 8;
        if (plan.clearance <= 0) throw MathError("cannot derive a default clearance");
    }

    // Grid for waypoint rounding: comfortably finer than the clearance.
    unsigned long grid_bits = 20;
    {
        mpq_class step(1, 1 << 16);
        while (step * 16 > plan.clearance && grid_bits < 200) {
            step /= 2;
            ++grid_bits;
        }
    }

    Planner planner{disks, plan.clearance, grid_bits};
    plan.waypoints.push_back(from);
    std::vector<GaussianRational> rest = planner.route(from, target, 0);
    for (auto& w : rest) plan.waypoints.push_back(std::move(w));
    return plan;
}

TransitionMatrix taylor_transition(const gd::PicardFuchsOperator& op, const GaussianRational& a,
                                   const GaussianRational& b, mpfr_prec_t prec) {
    int r = op.order();
    if (r <= 0) throw UsageError("transition needs an operator of positive order");
    if (a == b)
        return {a, b, BallMat::identity(static_cast<size_t>(r), prec)};

    std::vector<RatDisk> disks;
    {
        const ZPoly& lead = op.coeffs.back();
        if (lead.degree() >= 1) disks = rat_disks(isolate_roots(lead, prec));
    }

    TransitionMatrix out{a, b, BallMat::identity(static_cast<size_t>(r), prec)};
    GaussianRational p = a;
    int steps = 0;
    while (!(p == b)) {
        if (++steps > 4096)
            throw PrecisionError("taylor transition exceeded the step budget");
        mpq_class radius = disks.empty() ? mpq_class(0) : nearest_distance_lb(p, disks);
        if (!disks.empty() && radius <= 0)
            throw MathError("taylor step too close to a singularity");
        GaussianRational q = b;
        mpq_class len2 = (b.re - p.re) * (b.re - p.re) + (b.im - p.im) * (b.im - p.im);
        if (!disks.empty()) {
            mpq_class len_ub = rat_sqrt_upper(len2);
            if (2 * len_ub > radius) {
                mpq_class lambda = radius / (2 * len_ub);
                q = GaussianRational(p.re + lambda * (b.re - p.re), p.im + lambda * (b.im - p.im));
            }
        } else {
            // No finite singularities: declare a generous local radius so the
            // tail policy still sees geometric decay.
            radius = 4 * rat_sqrt_upper(len2);
        }
        GaussianRational h(q.re - p.re, q.im - p.im);
        BallMat step = taylor_step(op, p, h, radius, prec);
        out.map = step * out.map;
        p = q;
    }
    return out;
}

TransitionMatrix transport_along(const gd::PicardFuchsOperator& op, const PathPlan& plan,
                                 mpfr_prec_t prec) {
    if (plan.waypoints.empty()) throw UsageError("empty path plan");
    int r = op.order();
    TransitionMatrix out{plan.waypoints.front(), plan.waypoints.back(),
                         BallMat::identity(static_cast<size_t>(r), prec)};
    for (size_t i = 0; i + 1 < plan.waypoints.size(); ++i) {
        TransitionMatrix seg =
            taylor_transition(op, plan.waypoints[i], plan.waypoints[i + 1], prec);
        out.map = seg.map * out.map;
    }
    return out;
}

}  // namespace heights::ode_transport
