#include "griffiths_dwork/connection.hpp"

#include <optional>
#include <sstream>

#include "exactalg/modular_reconstruct.hpp"
#include "exactalg/zp.hpp"
#include "exactalg/zp_matrix.hpp"
#include "exactalg/zp_poly.hpp"
#include "support/errors.hpp"
#include "support/int_utils.hpp"

namespace heights::gd {

using exactalg::Mat;
using exactalg::QMat;
using exactalg::RatFunc;
using exactalg::RatFuncPoly;
using exactalg::ZPoly;

ResidueForm parameter_derivative_form(const HypersurfaceFamily& fam, const ResidueForm& form) {
    int k = form.pole_order;
    RatFuncPoly at = form.numerator.map_coeffs<RatFunc>(
        [](const RatFunc& c) { return c.derivative(); });
    RatFuncPoly num = at * fam.poly;
    num += form.numerator.scaled(RatFunc(-k)) * fam.parameter_derivative();
    return ResidueForm{std::move(num), k + 1};
}

Mat<RatFunc> connection_matrix(const ReductionEngine& engine) {
    const auto& basis = engine.basis();
    std::vector<ResidueForm> derived;
    derived.reserve(basis.size());
    for (const auto& form : engine.basis_forms())
        derived.push_back(parameter_derivative_form(engine.family(), form));
    auto reduced = engine.reduce_batch(derived);
    Mat<RatFunc> a(basis.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < basis.size(); ++i) a.at(j, i) = reduced[j].coords[i];
    return a;
}

std::vector<std::vector<RatFunc>> coordinate_flow(const Mat<RatFunc>& conn, size_t row, int count) {
    size_t dim = conn.rows();
    if (row >= dim) throw UsageError("basis row out of range");
    std::vector<std::vector<RatFunc>> flow;
    flow.reserve(count);
    std::vector<RatFunc> c(dim, RatFunc(0));
    c[row] = RatFunc(1);
    for (int j = 0; j < count; ++j) {
        flow.push_back(c);
        std::vector<RatFunc> next(dim, RatFunc(0));
        for (size_t i = 0; i < dim; ++i) {
            next[i] = c[i].derivative();
            for (size_t l = 0; l < dim; ++l) next[i] += conn.at(l, i) * c[l];
        }
        c = std::move(next);
    }
    return flow;
}

namespace {

// Denominator-free form of the coordinate flow: with D the common
// denominator of the connection, v_j = D^j c_j stays polynomial and obeys
// v_{j+1} = v_j' D - j v_j D' + N^T v_j where N is the cleared connection.
struct ClearedFlow {
    ZPoly den;
    std::vector<std::vector<ZPoly>> v;
};

ClearedFlow cleared_flow(const Mat<RatFunc>& conn, size_t row, int count) {
    size_t dim = conn.rows();
    if (row >= dim) throw UsageError("basis row out of range");
    ZPoly den = ZPoly::constant(1);
    for (size_t j = 0; j < dim; ++j)
        for (size_t i = 0; i < dim; ++i) {
            const ZPoly& d = conn.at(j, i).den();
            den = exactalg::zpoly_exact_div(den * d, exactalg::zpoly_gcd(den, d));
        }
    std::vector<std::vector<ZPoly>> cleared_t(dim, std::vector<ZPoly>(dim));
    for (size_t j = 0; j < dim; ++j)
        for (size_t i = 0; i < dim; ++i)
            cleared_t[i][j] =
                conn.at(j, i).num() * exactalg::zpoly_exact_div(den, conn.at(j, i).den());
    ZPoly dden = den.derivative();

    ClearedFlow out;
    out.den = den;
    std::vector<ZPoly> v(dim);
    v[row] = ZPoly::constant(1);
    for (int j = 0; j < count; ++j) {
        out.v.push_back(v);
        std::vector<ZPoly> next(dim);
        for (size_t i = 0; i < dim; ++i) {
            next[i] = v[i].derivative() * den - (v[i] * dden) * mpz_class(j);
            for (size_t l = 0; l < dim; ++l) next[i] += cleared_t[i][l] * v[l];
        }
        v = std::move(next);
    }
    return out;
}

enum class ProbeOutcome { kNoRelation, kCandidate, kInconclusive };

// Looks for c_r in the span of c_0..c_{r-1} by sampling the cleared flow at
// many (prime, parameter) points. A full-rank inconsistent sample proves
// there is no relation at this order; agreeing reconstructions over two
// prime batches yield a candidate (verified exactly by the caller).
ProbeOutcome probe_relation(const ClearedFlow& fl, size_t r, long dbound,
                            std::vector<RatFunc>& alphas) {
    size_t dim = fl.v[0].size();
    size_t want = 2 * static_cast<size_t>(dbound) + 9;
    std::vector<std::vector<exactalg::ModularImage>> images(r);
    std::vector<std::vector<RatFunc>> prev;
    size_t pi = 0;
    int dead_primes = 0, failed_interps = 0;
    for (int round = 0; round < 200; ++round) {
        exactalg::ZpCtx ctx{nth_modular_prime(pi++)};
        // Reduce the flow once per prime.
        std::vector<std::vector<exactalg::ZpPoly>> vp(r + 1);
        for (size_t j = 0; j <= r; ++j)
            for (size_t i = 0; i < dim; ++i) vp[j].push_back(zpoly_mod(fl.v[j][i], &ctx));
        exactalg::ZpPoly denp = zpoly_mod(fl.den, &ctx);
        if (denp.is_zero()) continue;

        std::vector<uint64_t> xs;
        std::vector<std::vector<uint64_t>> ys(r);
        uint64_t tau = 2;
        size_t attempts = 0;
        while (xs.size() < want && attempts < 4 * want + 64 && tau < ctx.p) {
            ++attempts;
            uint64_t point = tau++;
            uint64_t dval = denp.eval(point);
            if (dval == 0) continue;
            // Column j is v_j(tau) D(tau)^{r-j}; the right-hand side is v_r.
            exactalg::ZpMat aug(dim, r + 1, &ctx);
            uint64_t dpow = 1;
            for (size_t jj = 0; jj <= r; ++jj) {
                size_t j = r - jj;
                for (size_t i = 0; i < dim; ++i)
                    aug.at(i, j) = ctx.mul(vp[j][i].eval(point), j == r ? 1 : dpow);
                dpow = ctx.mul(dpow, dval);
            }
            auto piv = exactalg::zp_rref_inplace(aug, r + 1);
            bool rhs_pivot = !piv.empty() && piv.back() == r;
            if (rhs_pivot && piv.size() == r + 1) return ProbeOutcome::kNoRelation;
            if (rhs_pivot || piv.size() != r) continue;
            for (size_t j = 0; j < r; ++j) ys[j].push_back(aug.at(j, r));
            xs.push_back(point);
        }
        if (xs.size() < want) {
            if (++dead_primes >= 3) return ProbeOutcome::kInconclusive;
            continue;
        }
        dead_primes = 0;

        bool interp_ok = true;
        for (size_t j = 0; j < r && interp_ok; ++j) {
            auto ri = exactalg::zp_rational_interpolate(xs, ys[j], static_cast<int>(dbound),
                                                        static_cast<int>(dbound), &ctx);
            if (!ri) {
                interp_ok = false;
                break;
            }
            images[j].push_back(
                exactalg::ModularImage{ctx.p, ri->first.coeffs(), ri->second.coeffs()});
        }
        if (!interp_ok) {
            if (++failed_interps >= 2) return ProbeOutcome::kInconclusive;
            continue;
        }
        failed_interps = 0;

        std::vector<std::vector<RatFunc>> cand(1, std::vector<RatFunc>(r));
        bool complete = true;
        for (size_t j = 0; j < r && complete; ++j) {
            auto lifted = exactalg::reconstruct_ratfunc(images[j]);
            if (!lifted) {
                complete = false;
                break;
            }
            cand[0][j] = std::move(*lifted);
        }
        if (!complete) continue;
        if (!prev.empty() && prev == cand) {
            alphas = std::move(cand[0]);
            return ProbeOutcome::kCandidate;
        }
        prev = std::move(cand);
    }
    return ProbeOutcome::kInconclusive;
}

}  // namespace

PicardFuchsOperator picard_fuchs(const Mat<RatFunc>& conn, size_t row) {
    size_t dim = conn.rows();
    ClearedFlow fl = cleared_flow(conn, row, static_cast<int>(dim) + 1);
    for (size_t r = 1; r <= dim; ++r) {
        long dbound = 8 + fl.den.degree() * static_cast<long>(r + 2);
        bool no_relation = false;
        for (int esc = 0; esc < 4 && !no_relation; ++esc, dbound *= 2) {
            std::vector<RatFunc> alphas;
            ProbeOutcome got = probe_relation(fl, r, dbound, alphas);
            if (got == ProbeOutcome::kNoRelation) {
                no_relation = true;
                break;
            }
            if (got == ProbeOutcome::kInconclusive) continue;

            // Clear the monic relation u^(r) = sum alpha_j u^(j) to integer
            // polynomial coefficients.
            std::vector<RatFunc> p(r + 1);
            for (size_t j = 0; j < r; ++j) p[j] = RatFunc(0) - alphas[j];
            p[r] = RatFunc(1);
            ZPoly g = ZPoly::constant(1);
            for (const auto& c : p)
                if (!c.is_zero())
                    g = exactalg::zpoly_exact_div(g * c.den(), exactalg::zpoly_gcd(g, c.den()));
            PicardFuchsOperator op;
            op.coeffs.resize(r + 1);
            for (size_t j = 0; j <= r; ++j)
                op.coeffs[j] = p[j].is_zero()
                                   ? ZPoly()
                                   : p[j].num() * exactalg::zpoly_exact_div(g, p[j].den());

            // Exact certificate: sum_j q_j v_j D^{r-j} must vanish.
            std::vector<ZPoly> acc(dim);
            ZPoly dpow = ZPoly::constant(1);
            for (size_t jj = 0; jj <= r; ++jj) {
                size_t j = r - jj;
                if (!op.coeffs[j].is_zero()) {
                    ZPoly w = op.coeffs[j] * (jj == 0 ? ZPoly::constant(1) : dpow);
                    for (size_t i = 0; i < dim; ++i) acc[i] += fl.v[j][i] * w;
                }
                dpow = jj == 0 ? fl.den : dpow * fl.den;
            }
            bool zero = true;
            for (const auto& a : acc) zero = zero && a.is_zero();
            if (!zero) continue;

            ZPoly common;
            for (const auto& q : op.coeffs)
                if (!q.is_zero()) common = common.is_zero() ? q : exactalg::zpoly_gcd(common, q);
            for (auto& q : op.coeffs)
                if (!q.is_zero()) q = exactalg::zpoly_exact_div(q, common);
            if (op.coeffs[r].leading() < 0)
                for (auto& q : op.coeffs) q = -q;
            return op;
        }
        if (!no_relation)
            throw MathError("scalar relation search did not stabilize at order " + std::to_string(r));
    }
    throw MathError("no scalar relation found within the local system dimension");
}

QMat initial_jet_coefficients(const Mat<RatFunc>& conn, size_t row, int count,
                              const mpq_class& t0) {
    ClearedFlow fl = cleared_flow(conn, row, count);
    mpq_class dval = exactalg::qpoly_from_z(fl.den).eval_coeff(t0);
    if (dval == 0) throw MathError("rational function pole at evaluation point");
    QMat out(count, conn.rows());
    mpq_class dpow = 1;
    for (int j = 0; j < count; ++j) {
        for (size_t i = 0; i < conn.rows(); ++i)
            out.at(j, i) = exactalg::qpoly_from_z(fl.v[j][i]).eval_coeff(t0) / dpow;
        dpow *= dval;
    }
    return out;
}

std::string picard_fuchs_to_text(const PicardFuchsOperator& op) {
    std::ostringstream out;
    out << "pfop " << op.order() << "\n";
    for (const auto& q : op.coeffs) {
        out << q.coeffs().size();
        for (const auto& c : q.coeffs()) out << " " << c.get_str();
        out << "\n";
    }
    return out.str();
}

PicardFuchsOperator picard_fuchs_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int order = -1;
    if (!(in >> tag >> order) || tag != "pfop" || order < 0)
        throw IoError("malformed operator text");
    PicardFuchsOperator op;
    op.coeffs.resize(order + 1);
    for (int j = 0; j <= order; ++j) {
        size_t n = 0;
        if (!(in >> n)) throw IoError("malformed operator text");
        std::vector<mpz_class> cs(n);
        for (size_t i = 0; i < n; ++i) {
            std::string word;
            if (!(in >> word)) throw IoError("malformed operator text");
            cs[i] = mpz_class(word);
        }
        op.coeffs[j] = ZPoly(std::move(cs));
    }
    if (op.coeffs.back().is_zero()) throw IoError("operator leading coefficient is zero");
    return op;
}

}  // namespace heights::gd
