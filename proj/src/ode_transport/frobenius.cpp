#include "ode_transport/frobenius.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "ode_transport/rational_geometry.hpp"
#include "ode_transport/roots.hpp"
#include "ode_transport/transport.hpp"
#include "support/errors.hpp"

namespace heights::ode_transport {
namespace {

using exactalg::ZPoly;
using numerics::Ball;
using numerics::BallMat;
using numerics::LogSeries;

long valuation(const ZPoly& p) {
    const auto& c = p.coeffs();
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<long>(i);
    return -1;
}

// The operator rewritten as sum_m b_m(t) theta^m with theta = t d/dt, after
// clearing the Laurent normalization t^{r - v_r}. Regular singularity at 0
// means every b_m stays polynomial, which is exactly the valuation condition
// v_k >= v_r - (r - k) on the original coefficients.
struct ThetaForm {
    std::vector<ZPoly> b;
    ZPoly chi;        // indicial polynomial sum_m b_m(0) x^m, degree = order
    long t_degree = 0;  // max t-degree among the b_m
};

ThetaForm theta_form(const gd::PicardFuchsOperator& op) {
    int r = op.order();
    if (r <= 0) throw UsageError("operator order must be positive");
    long vr = valuation(op.coeffs[static_cast<size_t>(r)]);
    for (int k = 0; k < r; ++k) {
        const ZPoly& pk = op.coeffs[static_cast<size_t>(k)];
        if (pk.is_zero()) continue;
        if (valuation(pk) < vr - (r - k))
            throw MathError("irregular singular point at t = 0");
    }
    // Signed Stirling numbers of the first kind give t^k d^k as a polynomial
    // in theta: t^k d^k = theta (theta - 1) ... (theta - k + 1).
    std::vector<std::vector<mpz_class>> stir(static_cast<size_t>(r) + 1);
    stir[0] = {mpz_class(1)};
    for (int k = 0; k < r; ++k) {
        auto& next = stir[static_cast<size_t>(k) + 1];
        next.assign(static_cast<size_t>(k) + 2, mpz_class(0));
        for (int m = 0; m <= k; ++m) {
            next[static_cast<size_t>(m) + 1] += stir[static_cast<size_t>(k)][static_cast<size_t>(m)];
            next[static_cast<size_t>(m)] -= mpz_class(k) * stir[static_cast<size_t>(k)][static_cast<size_t>(m)];
        }
    }
    ThetaForm out;
    out.b.assign(static_cast<size_t>(r) + 1, ZPoly{});
    for (int k = 0; k <= r; ++k) {
        const ZPoly& pk = op.coeffs[static_cast<size_t>(k)];
        if (pk.is_zero()) continue;
        long shift = r - k - vr;
        const auto& pc = pk.coeffs();
        std::vector<mpz_class> ac;
        if (shift >= 0) {
            ac.assign(pc.size() + static_cast<size_t>(shift), mpz_class(0));
            for (size_t i = 0; i < pc.size(); ++i) ac[i + static_cast<size_t>(shift)] = pc[i];
        } else {
            ac.assign(pc.begin() + static_cast<long>(-shift), pc.end());
        }
        ZPoly a{std::move(ac)};
        for (int m = 0; m <= k; ++m) {
            const mpz_class& s = stir[static_cast<size_t>(k)][static_cast<size_t>(m)];
            if (s == 0) continue;
            out.b[static_cast<size_t>(m)] += a * s;
        }
    }
    std::vector<mpz_class> chic(static_cast<size_t>(r) + 1);
    for (int m = 0; m <= r; ++m) chic[static_cast<size_t>(m)] = out.b[static_cast<size_t>(m)][0];
    out.chi = ZPoly{std::move(chic)};
    for (const auto& bm : out.b) out.t_degree = std::max<long>(out.t_degree, bm.degree());
    return out;
}

// Exact division of p by (x - c); returns false when c is not a root.
bool divide_linear(const ZPoly& p, const mpz_class& c, ZPoly* quotient) {
    const auto& a = p.coeffs();
    if (a.size() < 2) return false;
    size_t n = a.size() - 1;
    std::vector<mpz_class> q(n, mpz_class(0));
    q[n - 1] = a[n];
    for (size_t i = n - 1; i >= 1; --i) q[i - 1] = a[i] + c * q[i];
    if (a[0] + c * q[0] != 0) return false;
    *quotient = ZPoly{std::move(q)};
    return true;
}

// Integer roots of chi with multiplicities. All local exponents must be
// integers for the downstream log-ladder to make sense, so anything left
// over after extracting the integer roots is an error.
std::map<long, int> integer_root_table(const ZPoly& chi) {
    int r = chi.degree();
    std::map<long, int> table;
    int total = 0;
    ZPoly work = chi;
    while (!work.is_zero() && work[0] == 0) {
        std::vector<mpz_class> c(work.coeffs().begin() + 1, work.coeffs().end());
        work = ZPoly{std::move(c)};
        ++table[0];
        ++total;
    }
    if (work.degree() >= 1) {
        for (const Ball& ball : isolate_roots(work, 128)) {
            if (!mpfr_fits_slong_p(ball.mid_re().raw(), MPFR_RNDN)) continue;
            long cand = mpfr_get_si(ball.mid_re().raw(), MPFR_RNDN);
            if (table.count(cand)) continue;
            mpz_class cz(cand);
            ZPoly quo;
            int mult = 0;
            while (divide_linear(work, cz, &quo)) {
                work = quo;
                ++mult;
            }
            if (mult > 0) {
                table[cand] = mult;
                total += mult;
            }
        }
    }
    if (total != r) throw MathError("unsupported exponents at 0");
    return table;
}

// A log-polynomial at one t-level: entry q multiplies log(t)^q.
using LogPoly = std::vector<mpq_class>;

bool logpoly_zero(const LogPoly& h) {
    for (const auto& v : h)
        if (v != 0) return false;
    return true;
}

// (c + d/dl) h for the log variable l.
LogPoly affine_theta(const mpq_class& c, const LogPoly& h) {
    LogPoly out(h.size(), mpq_class(0));
    for (size_t q = 0; q < h.size(); ++q) {
        out[q] += c * h[q];
        if (q + 1 < h.size()) out[q] += mpq_class(static_cast<long>(q) + 1) * h[q + 1];
    }
    return out;
}

// B(c + d/dl) h where B(x) = sum_m b[m][i] x^m collects the t^i coefficients
// across the theta powers.
LogPoly apply_theta_poly(const ThetaForm& tf, size_t i, const mpq_class& c, const LogPoly& h) {
    LogPoly acc(h.size(), mpq_class(0));
    LogPoly pw = h;
    for (size_t m = 0; m < tf.b.size(); ++m) {
        if (m > 0) pw = affine_theta(c, pw);
        const mpz_class& coeff = tf.b[m][i];
        if (coeff == 0) continue;
        for (size_t q = 0; q < h.size(); ++q) {
            if (pw[q] != 0) acc[q] += mpq_class(coeff) * pw[q];
        }
    }
    return acc;
}

mpz_class rising(long q, long j) {
    mpz_class out(1);
    for (long i = 1; i <= j; ++i) out *= mpz_class(q + i);
    return out;
}

// Solves chi(c + d/dl) f = g for the canonical particular solution: the
// entries of f below log power mu are left at zero, which pins down the
// kernel ambiguity. chis holds the coefficients of chi shifted to c, so
// chis[0..mu-1] vanish and chis[mu] does not.
LogPoly solve_level(const std::vector<mpz_class>& chis, int mu, const LogPoly& g) {
    long top = -1;
    for (size_t q = 0; q < g.size(); ++q)
        if (g[q] != 0) top = static_cast<long>(q);
    if (top < 0) return {};
    long r = static_cast<long>(chis.size()) - 1;
    LogPoly f(static_cast<size_t>(top + mu) + 1, mpq_class(0));
    for (long q = top; q >= 0; --q) {
        mpq_class acc = g[static_cast<size_t>(q)];
        for (long j = mu + 1; j <= r; ++j) {
            size_t idx = static_cast<size_t>(q + j);
            if (idx >= f.size()) continue;
            if (chis[static_cast<size_t>(j)] == 0 || f[idx] == 0) continue;
            acc -= chis[static_cast<size_t>(j)] * mpq_class(rising(q, j)) * f[idx];
        }
        mpz_class den = chis[static_cast<size_t>(mu)] * rising(q, mu);
        f[static_cast<size_t>(q + mu)] = acc / mpq_class(den);
    }
    return f;
}

struct Build {
    long lead_n = 0;
    int lead_q = 0;
    std::vector<LogPoly> rows;  // rows[n] sits at t^{e_min + n}
};

}  // namespace

FrobeniusBasis frobenius_basis(const gd::PicardFuchsOperator& op, long order, mpfr_prec_t prec) {
    if (order < 1) throw UsageError("retained order must be positive");
    if (prec < 16) throw UsageError("precision too small");
    ThetaForm tf = theta_form(op);
    int r = op.order();
    std::map<long, int> roots = integer_root_table(tf.chi);
    long e_min = roots.begin()->first;
    long e_max = roots.rbegin()->first;
    long boundary = e_max - e_min;
    long n_count = boundary + order;

    std::vector<Build> builds;
    for (long n = 0; n < n_count; ++n) {
        long c = e_min + n;
        ZPoly shifted = tf.chi.shift(mpz_class(c));
        const auto& chis = shifted.coeffs();
        int mu = 0;
        if (auto it = roots.find(c); it != roots.end()) mu = it->second;
        for (int j = 0; j < mu; ++j) {
            if (chis[static_cast<size_t>(j)] != 0)
                throw MathError("indicial multiplicity mismatch");
        }
        if (chis[static_cast<size_t>(mu)] == 0) throw MathError("indicial multiplicity mismatch");

        for (auto& sol : builds) {
            LogPoly g;
            long imax = std::min<long>(n, tf.t_degree);
            for (long i = 1; i <= imax; ++i) {
                const LogPoly& prev = sol.rows[static_cast<size_t>(n - i)];
                if (prev.empty() || logpoly_zero(prev)) continue;
                LogPoly contrib = apply_theta_poly(tf, static_cast<size_t>(i), mpq_class(c - i), prev);
                if (g.size() < contrib.size()) g.resize(contrib.size(), mpq_class(0));
                for (size_t q = 0; q < contrib.size(); ++q) g[q] -= contrib[q];
            }
            sol.rows.push_back(solve_level(chis, mu, g));
        }
        for (int q = 0; q < mu; ++q) {
            Build nb;
            nb.lead_n = n;
            nb.lead_q = q;
            nb.rows.assign(static_cast<size_t>(n), LogPoly{});
            LogPoly seed(static_cast<size_t>(q) + 1, mpq_class(0));
            seed[static_cast<size_t>(q)] = 1;
            nb.rows.push_back(std::move(seed));
            builds.push_back(std::move(nb));
        }
    }

    // Exact residual check: the operator applied to each built solution must
    // vanish identically through every retained level.
    for (const auto& sol : builds) {
        std::vector<std::vector<LogPoly>> tp(static_cast<size_t>(r) + 1);
        tp[0] = sol.rows;
        for (int m = 1; m <= r; ++m) {
            tp[static_cast<size_t>(m)].resize(sol.rows.size());
            for (long n = 0; n < n_count; ++n)
                tp[static_cast<size_t>(m)][static_cast<size_t>(n)] = affine_theta(
                    mpq_class(e_min + n), tp[static_cast<size_t>(m) - 1][static_cast<size_t>(n)]);
        }
        for (long n = 0; n < n_count; ++n) {
            LogPoly res;
            for (long i = 0; i <= std::min<long>(n, tf.t_degree); ++i) {
                for (int m = 0; m <= r; ++m) {
                    const mpz_class& coeff = tf.b[static_cast<size_t>(m)][static_cast<size_t>(i)];
                    if (coeff == 0) continue;
                    const LogPoly& part = tp[static_cast<size_t>(m)][static_cast<size_t>(n - i)];
                    if (res.size() < part.size()) res.resize(part.size(), mpq_class(0));
                    for (size_t q = 0; q < part.size(); ++q) res[q] += mpq_class(coeff) * part[q];
                }
            }
            if (!logpoly_zero(res)) throw MathError("local solution residual check failed");
        }
    }

    std::sort(builds.begin(), builds.end(), [](const Build& a, const Build& b) {
        return a.lead_n != b.lead_n ? a.lead_n < b.lead_n : a.lead_q < b.lead_q;
    });

    FrobeniusBasis out;
    out.order = order;
    out.prec = prec;

    // Safety radius: certified distance to the nearest finite singularity
    // away from 0. Zero means no finite constraint.
    SingularitySet sing = singularities(op, std::max<mpfr_prec_t>(prec, 192));
    mpq_class radius(0);
    bool have = false;
    for (const Ball& b : sing.points) {
        if (b.contains_zero()) continue;
        RatDisk d = rat_disk(b);
        mpq_class lb = rat_sqrt_lower(d.re * d.re + d.im * d.im) - d.rad;
        if (lb <= 0) continue;
        if (!have || lb < radius) radius = lb;
        have = true;
    }
    if (have) out.safety_radius = radius;

    for (const auto& build : builds) {
        FrobeniusSolution s;
        s.exponent = e_min + build.lead_n;
        s.log_power = build.lead_q;
        size_t base = static_cast<size_t>(build.lead_n);
        int logs = build.lead_q;
        for (long j = 0; j < order; ++j) {
            const LogPoly& row = build.rows[base + static_cast<size_t>(j)];
            for (size_t q = 0; q < row.size(); ++q)
                if (row[q] != 0) logs = std::max(logs, static_cast<int>(q));
        }
        LogSeries ser(static_cast<size_t>(order), logs, prec);
        s.exact.resize(static_cast<size_t>(order));
        for (long j = 0; j < order; ++j) {
            const LogPoly& row = build.rows[base + static_cast<size_t>(j)];
            s.exact[static_cast<size_t>(j)].assign(row.begin(), row.end());
            for (size_t q = 0; q < row.size(); ++q) {
                if (row[q] != 0)
                    ser.at(static_cast<size_t>(j), static_cast<int>(q)) = Ball::from_mpq(row[q], prec);
            }
        }
        ser.safety_radius = out.safety_radius;
        bool tail_zero = true;
        for (long n = boundary + 1; n < n_count && tail_zero; ++n) {
            const LogPoly& row = build.rows[static_cast<size_t>(n)];
            if (!row.empty() && !logpoly_zero(row)) tail_zero = false;
        }
        ser.polynomial = tail_zero && (order - 1 >= tf.t_degree);
        s.series = std::move(ser);
        out.solutions.push_back(std::move(s));
    }
    return out;
}

namespace {

// (shift + theta) applied to a series, entrywise in ball arithmetic.
LogSeries series_affine(const LogSeries& g, long shift, mpfr_prec_t prec) {
    LogSeries out = numerics::theta_apply(g);
    Ball s = Ball::from_int(shift, prec);
    for (size_t m = 0; m < g.truncation_order; ++m)
        for (int q = 0; q <= g.log_order; ++q) out.at(m, q) = out.at(m, q) + s * g.at(m, q);
    return out;
}

}  // namespace

BallMat frobenius_jet_matrix(const FrobeniusBasis& basis, const mpq_class& t) {
    size_t r = basis.solutions.size();
    if (r == 0) throw UsageError("empty local basis");
    if (t <= 0) throw UsageError("jet evaluation requires a positive rational point");
    if (basis.safety_radius > 0 && t >= basis.safety_radius)
        throw UsageError("evaluation point outside the declared safety radius");
    Ball tb = Ball::from_mpq(t, basis.prec);
    BallMat w(r, r, basis.prec);
    for (size_t j = 0; j < r; ++j) {
        const FrobeniusSolution& sol = basis.solutions[j];
        LogSeries g = sol.series;
        for (size_t k = 0; k < r; ++k) {
            // u^(k) = t^{e-k} (e-k+1+theta) ... (e+theta) S.
            Ball val = numerics::eval_log_series(g, tb) * ball_pow_int(tb, sol.exponent - static_cast<long>(k));
            w.at(k, j) = val;
            if (k + 1 < r) g = series_affine(g, sol.exponent - static_cast<long>(k), basis.prec);
        }
    }
    return w;
}

std::vector<Ball> match_at_endpoint(const FrobeniusBasis& basis, const mpq_class& t,
                                    const std::vector<Ball>& jet) {
    size_t r = basis.solutions.size();
    if (jet.size() != r) throw UsageError("jet length must match the basis size");
    BallMat w = frobenius_jet_matrix(basis, t);
    BallMat rhs(r, 1, basis.prec);
    for (size_t k = 0; k < r; ++k) rhs.at(k, 0) = jet[k];
    BallMat c = numerics::ball_matrix_solve(w, rhs);
    std::vector<Ball> out;
    out.reserve(r);
    for (size_t k = 0; k < r; ++k) out.push_back(c.at(k, 0));
    return out;
}

}  // namespace heights::ode_transport
