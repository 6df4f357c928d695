#include "exactalg/snf.hpp"

#include "support/errors.hpp"

namespace heights::exactalg {

ZMat zmat_identity(size_t n) {
    ZMat I(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

ZMat zmat_mul(const ZMat& A, const ZMat& B) {
    size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    if (!A.empty() && A[0].size() != k) throw UsageError("matrix product shape mismatch");
    ZMat C(m, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

mpz_class zmat_det(const ZMat& A) {
    size_t n = A.size();
    if (n == 0) return 1;
    if (A[0].size() != n) throw UsageError("determinant of non-square matrix");
    // Fraction-free Bareiss elimination.
    ZMat m = A;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = SIZE_MAX;
            for (size_t i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == SIZE_MAX) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (r != 0) throw MathError("Bareiss division not exact");
                m[i][j] = q;
            }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

bool zmat_is_identity(const ZMat& A) {
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j)
            if (A[i][j] != ((i == j) ? 1 : 0)) return false;
    return true;
}

namespace {

void row_swap(ZMat& M, ZMat& U, size_t a, size_t b) {
    std::swap(M[a], M[b]);
    std::swap(U[a], U[b]);
}
void col_swap(ZMat& M, ZMat& V, size_t a, size_t b) {
    for (auto& row : M) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
}
// row a -= q * row b
void row_axpy(ZMat& M, ZMat& U, size_t a, size_t b, const mpz_class& q) {
    size_t n = M[a].size();
    for (size_t j = 0; j < n; ++j) M[a][j] -= q * M[b][j];
    for (size_t j = 0; j < U[a].size(); ++j) U[a][j] -= q * U[b][j];
}
// col a -= q * col b
void col_axpy(ZMat& M, ZMat& V, size_t a, size_t b, const mpz_class& q) {
    for (auto& row : M) row[a] -= q * row[b];
    for (auto& row : V) row[a] -= q * row[b];
}
void row_negate(ZMat& M, ZMat& U, size_t a) {
    for (auto& v : M[a]) v = -v;
    for (auto& v : U[a]) v = -v;
}

}  // namespace

SmithResult smith_normal_form(const ZMat& M_in) {
    size_t m = M_in.size();
    size_t n = m ? M_in[0].size() : 0;
    SmithResult res;
    res.D = M_in;
    res.U = zmat_identity(m);
    res.V = zmat_identity(n);
    ZMat& D = res.D;
    ZMat& U = res.U;
    ZMat& V = res.V;

    size_t t = 0;
    while (t < m && t < n) {
        // Find the nonzero entry of least absolute value in the trailing block.
        size_t pi = SIZE_MAX, pj = SIZE_MAX;
        mpz_class best;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (D[i][j] == 0) continue;
                mpz_class a = abs(D[i][j]);
                if (pi == SIZE_MAX || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == SIZE_MAX) break;
        if (pi != t) row_swap(D, U, t, pi);
        if (pj != t) col_swap(D, V, t, pj);
        if (D[t][t] < 0) row_negate(D, U, t);

        bool clean = true;
        for (size_t i = t + 1; i < m; ++i) {
            if (D[i][t] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
            row_axpy(D, U, i, t, q);
            if (D[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (D[t][j] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
            col_axpy(D, V, j, t, q);
            if (D[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; pick a new pivot

        // Enforce divisibility: if d_t fails to divide a later entry, fold
        // that row in and redo this corner.
        bool redo = false;
        for (size_t i = t + 1; i < m && !redo; ++i)
            for (size_t j = t + 1; j < n && !redo; ++j) {
                if (D[i][j] % D[t][t] != 0) {
                    row_axpy(D, U, t, i, mpz_class(-1));
                    redo = true;
                }
            }
        if (redo) continue;
        ++t;
    }
    return res;
}

}  // namespace heights::exactalg
