#include "exactalg/dixon.hpp"

#include "exactalg/zp_matrix.hpp"
#include "support/errors.hpp"
#include "support/int_utils.hpp"

namespace heights::exactalg {

namespace {

struct ZRows {
    std::vector<std::vector<mpz_class>> a;
    size_t rows() const { return a.size(); }
    size_t cols() const { return a.empty() ? 0 : a[0].size(); }
};

// Clear denominators row by row; row scaling preserves solution sets.
ZRows clear_rows(const QMat& A, const std::vector<mpq_class>* y, std::vector<mpz_class>* y_out) {
    ZRows z;
    z.a.resize(A.rows());
    if (y_out) y_out->resize(A.rows());
    for (size_t i = 0; i < A.rows(); ++i) {
        mpz_class den = 1;
        for (size_t j = 0; j < A.cols(); ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), A.at(i, j).get_den().get_mpz_t());
        if (y)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), (*y)[i].get_den().get_mpz_t());
        z.a[i].resize(A.cols());
        for (size_t j = 0; j < A.cols(); ++j) {
            mpq_class s = A.at(i, j) * mpq_class(den);
            z.a[i][j] = s.get_num();
        }
        if (y) {
            mpq_class s = (*y)[i] * mpq_class(den);
            (*y_out)[i] = s.get_num();
        }
    }
    return z;
}

uint64_t mod_reduce(const mpz_class& v, uint64_t p) {
    unsigned long r = mpz_fdiv_ui(v.get_mpz_t(), p);
    return r;
}

// Lift-and-reconstruct applied to one right-hand side with a prepared LU.
// Returns nullopt when the iteration cap is hit before reconstruction
// stabilizes, which signals the caller to extend or switch primes.
std::optional<std::vector<mpq_class>> lift_one(const ZRows& az, const ZpLU& lu, const ZpCtx& ctx,
                                               const std::vector<mpz_class>& rhs, size_t max_iters) {
    size_t n = az.cols();
    mpz_class p(static_cast<unsigned long>(ctx.p));
    std::vector<mpz_class> x(n, 0), b = rhs;
    mpz_class modulus = 1;
    size_t next_attempt = 8;
    for (size_t iter = 0; iter < max_iters; ++iter) {
        std::vector<uint64_t> bp(n);
        for (size_t i = 0; i < n; ++i) bp[i] = mod_reduce(b[i], ctx.p);
        std::vector<uint64_t> xi = lu.solve(std::move(bp));
        for (size_t i = 0; i < n; ++i) {
            if (xi[i]) x[i] += modulus * mpz_class(static_cast<unsigned long>(xi[i]));
        }
        // b <- (b - A xi) / p, exact.
        for (size_t r = 0; r < n; ++r) {
            mpz_class acc = b[r];
            for (size_t c = 0; c < n; ++c) {
                if (xi[c]) acc -= az.a[r][c] * static_cast<unsigned long>(xi[c]);
            }
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), p.get_mpz_t());
            if (rem != 0) throw MathError("p-adic lifting residual not divisible by p");
            b[r] = q;
        }
        modulus *= p;
        if (iter + 1 >= next_attempt) {
            next_attempt *= 2;
            std::vector<mpq_class> cand(n);
            bool ok = true;
            for (size_t i = 0; i < n && ok; ++i) {
                auto rec = rational_reconstruct(x[i], modulus);
                if (!rec)
                    ok = false;
                else
                    cand[i] = *rec;
            }
            if (!ok) continue;
            // Exact residual check against the integer system.
            for (size_t r = 0; r < n && ok; ++r) {
                mpq_class acc = -mpq_class(rhs[r]);
                for (size_t c = 0; c < n; ++c)
                    if (az.a[r][c] != 0) acc += mpq_class(az.a[r][c]) * cand[c];
                if (acc != 0) ok = false;
            }
            if (ok) return cand;
        }
    }
    return std::nullopt;
}

const ZpCtx& prime_ctx(size_t index) {
    static std::vector<ZpCtx> ctxs;
    while (ctxs.size() <= index) ctxs.push_back(ZpCtx{nth_modular_prime(ctxs.size())});
    return ctxs[index];
}

}  // namespace

std::vector<mpq_class> dixon_solve(const QMat& A, const std::vector<mpq_class>& y) {
    if (A.rows() != A.cols()) throw UsageError("p-adic solve expects a square matrix");
    if (y.size() != A.rows()) throw UsageError("right-hand side length mismatch");
    std::vector<mpz_class> yz;
    ZRows az = clear_rows(A, &y, &yz);
    size_t n = A.rows();
    for (size_t pi = 0; pi < 8; ++pi) {
        const ZpCtx& ctx = prime_ctx(pi);
        ZpMat ap(n, n, &ctx);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) ap.at(i, j) = mod_reduce(az.a[i][j], ctx.p);
        ZpLU lu(ap);
        if (lu.singular()) continue;
        auto sol = lift_one(az, lu, ctx, yz, 1 << 16);
        if (sol) return *sol;
        throw PrecisionError("p-adic lifting did not stabilize within the iteration cap");
    }
    throw MathError("matrix singular modulo every sampled prime; likely singular over the rationals");
}

std::optional<std::vector<mpq_class>> dixon_particular(const QMat& A,
                                                       const std::vector<mpq_class>& y) {
    if (y.size() != A.rows()) throw UsageError("right-hand side length mismatch");
    std::vector<mpz_class> yz;
    ZRows az = clear_rows(A, &y, &yz);
    size_t m = A.rows(), n = A.cols();
    int inconsistent_votes = 0;
    for (size_t pi = 0; pi < 8; ++pi) {
        const ZpCtx& ctx = prime_ctx(pi);
        ZpMat ap(m, n, &ctx);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j) ap.at(i, j) = mod_reduce(az.a[i][j], ctx.p);
        ZpMat work = ap;
        std::vector<size_t> pivot_cols = zp_rref_inplace(work, n);
        ZpMat at(n, m, &ctx);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j) at.at(j, i) = ap.at(i, j);
        std::vector<size_t> pivot_rows = zp_rref_inplace(at, m);
        size_t r = pivot_cols.size();
        if (pivot_rows.size() != r) continue;

        std::vector<mpq_class> x(n, 0);
        if (r > 0) {
            ZRows sub;
            sub.a.resize(r);
            std::vector<mpz_class> rhs(r);
            for (size_t i = 0; i < r; ++i) {
                sub.a[i].resize(r);
                for (size_t j = 0; j < r; ++j) sub.a[i][j] = az.a[pivot_rows[i]][pivot_cols[j]];
                rhs[i] = yz[pivot_rows[i]];
            }
            ZpMat subp(r, r, &ctx);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j) subp.at(i, j) = mod_reduce(sub.a[i][j], ctx.p);
            ZpLU lu(subp);
            if (lu.singular()) continue;
            auto sol = lift_one(sub, lu, ctx, rhs, 1 << 16);
            if (!sol) continue;
            for (size_t i = 0; i < r; ++i) x[pivot_cols[i]] = (*sol)[i];
        }
        // Residual against every row decides between success, inconsistency,
        // and an unlucky pivot choice. A nonzero residual on a row outside
        // the pivot row space means the system has no solution at all (the
        // pivot rows span the row space for a good prime); retrying other
        // primes arbitrates.
        bool ok = true;
        for (size_t row = 0; row < m && ok; ++row) {
            mpq_class acc = 0;
            for (size_t c = 0; c < n; ++c)
                if (az.a[row][c] != 0) acc += mpq_class(az.a[row][c]) * x[c];
            if (acc != yz[row]) ok = false;
        }
        if (ok) return x;
        // Confirm inconsistency with an augmented-rank test before giving up.
        ZpMat aug(m, n + 1, &ctx);
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < n; ++j) aug.at(i, j) = ap.at(i, j);
            aug.at(i, n) = mod_reduce(yz[i], ctx.p);
        }
        std::vector<size_t> aug_pivots = zp_rref_inplace(aug, n + 1);
        if (!aug_pivots.empty() && aug_pivots.back() == n) {
            // A single prime can misjudge consistency when a true solution
            // has p in a denominator; demand two agreeing verdicts.
            if (++inconsistent_votes >= 2) return std::nullopt;
        }
    }
    throw MathError("particular solve failed over every sampled prime");
}

std::vector<std::vector<mpq_class>> dixon_kernel(const QMat& A) {
    ZRows az = clear_rows(A, nullptr, nullptr);
    size_t m = A.rows(), n = A.cols();
    for (size_t pi = 0; pi < 8; ++pi) {
        const ZpCtx& ctx = prime_ctx(pi);
        ZpMat ap(m, n, &ctx);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j) ap.at(i, j) = mod_reduce(az.a[i][j], ctx.p);
        ZpMat work = ap;
        std::vector<size_t> pivot_cols = zp_rref_inplace(work, n);
        // Pivot rows come from the transpose.
        ZpMat at(n, m, &ctx);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j) at.at(j, i) = ap.at(i, j);
        std::vector<size_t> pivot_rows = zp_rref_inplace(at, m);
        size_t r = pivot_cols.size();
        if (pivot_rows.size() != r) continue;
        if (r == 0) {
            std::vector<std::vector<mpq_class>> basis;
            for (size_t f = 0; f < n; ++f) {
                std::vector<mpq_class> v(n, 0);
                v[f] = 1;
                basis.push_back(std::move(v));
            }
            return basis;
        }
        // Square subsystem on the pivot block.
        ZRows sub;
        sub.a.resize(r);
        for (size_t i = 0; i < r; ++i) {
            sub.a[i].resize(r);
            for (size_t j = 0; j < r; ++j) sub.a[i][j] = az.a[pivot_rows[i]][pivot_cols[j]];
        }
        ZpMat subp(r, r, &ctx);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) subp.at(i, j) = mod_reduce(sub.a[i][j], ctx.p);
        ZpLU lu(subp);
        if (lu.singular()) continue;
        std::vector<bool> is_pivot(n, false);
        for (size_t c : pivot_cols) is_pivot[c] = true;
        std::vector<std::vector<mpq_class>> basis;
        bool all_ok = true;
        for (size_t f = 0; f < n && all_ok; ++f) {
            if (is_pivot[f]) continue;
            std::vector<mpz_class> rhs(r);
            for (size_t i = 0; i < r; ++i) rhs[i] = -az.a[pivot_rows[i]][f];
            auto sol = lift_one(sub, lu, ctx, rhs, 1 << 16);
            if (!sol) {
                all_ok = false;
                break;
            }
            std::vector<mpq_class> v(n, 0);
            v[f] = 1;
            for (size_t i = 0; i < r; ++i) v[pivot_cols[i]] = (*sol)[i];
            // Exact verification against the whole matrix, not only the
            // pivot rows.
            for (size_t row = 0; row < m && all_ok; ++row) {
                mpq_class acc = 0;
                for (size_t c = 0; c < n; ++c)
                    if (az.a[row][c] != 0) acc += mpq_class(az.a[row][c]) * v[c];
                if (acc != 0) all_ok = false;
            }
            if (all_ok) basis.push_back(std::move(v));
        }
        if (all_ok) return basis;
    }
    throw MathError("kernel extraction failed over every sampled prime");
}

}  // namespace heights::exactalg
