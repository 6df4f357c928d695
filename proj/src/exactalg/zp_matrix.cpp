#include "exactalg/zp_matrix.hpp"

namespace heights::exactalg {

std::vector<size_t> zp_rref_inplace(ZpMat& m, size_t pivot_col_limit) {
    const ZpCtx& F = m.ctx();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < pivot_col_limit && row < m.rows(); ++col) {
        size_t pr = SIZE_MAX;
        for (size_t i = row; i < m.rows(); ++i)
            if (m.at(i, col)) {
                pr = i;
                break;
            }
        if (pr == SIZE_MAX) continue;
        if (pr != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(pr, j));
        uint64_t inv = F.inv(m.at(row, col));
        for (size_t j = col; j < m.cols(); ++j) m.at(row, j) = F.mul(m.at(row, j), inv);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            uint64_t f = m.at(i, col);
            if (!f) continue;
            for (size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<uint64_t>> zp_kernel_basis(const ZpMat& A) {
    ZpMat m = A;
    const ZpCtx& F = m.ctx();
    auto pivots = zp_rref_inplace(m, A.cols());
    std::vector<bool> is_pivot(A.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<uint64_t>> out;
    for (size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint64_t> v(A.cols(), 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m.at(r, f));
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<ZpMat> zp_inverse(const ZpMat& A) {
    if (A.rows() != A.cols()) throw UsageError("inverse of non-square matrix");
    size_t n = A.rows();
    ZpMat aug(n, 2 * n, &A.ctx());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = zp_rref_inplace(aug, n);
    if (pivots.size() != n) return std::nullopt;
    ZpMat out(n, n, &A.ctx());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

ZpLU::ZpLU(const ZpMat& A) : lu_(A), perm_(A.rows()) {
    if (A.rows() != A.cols()) throw UsageError("LU of non-square matrix");
    const ZpCtx& F = A.ctx();
    size_t n = A.rows();
    for (size_t i = 0; i < n; ++i) perm_[i] = i;
    for (size_t col = 0; col < n; ++col) {
        size_t pr = SIZE_MAX;
        for (size_t i = col; i < n; ++i)
            if (lu_.at(i, col)) {
                pr = i;
                break;
            }
        if (pr == SIZE_MAX) {
            singular_ = true;
            return;
        }
        if (pr != col) {
            for (size_t j = 0; j < n; ++j) std::swap(lu_.at(col, j), lu_.at(pr, j));
            std::swap(perm_[col], perm_[pr]);
        }
        uint64_t inv = F.inv(lu_.at(col, col));
        for (size_t i = col + 1; i < n; ++i) {
            uint64_t f = F.mul(lu_.at(i, col), inv);
            lu_.at(i, col) = f;
            if (!f) continue;
            for (size_t j = col + 1; j < n; ++j)
                lu_.at(i, j) = F.sub(lu_.at(i, j), F.mul(f, lu_.at(col, j)));
        }
    }
}

std::vector<uint64_t> ZpLU::solve(std::vector<uint64_t> b) const {
    if (singular_) throw MathError("solve with singular LU factorization");
    const ZpCtx& F = lu_.ctx();
    size_t n = lu_.rows();
    std::vector<uint64_t> pb(n);
    for (size_t i = 0; i < n; ++i) pb[i] = b[perm_[i]];
    // Forward substitution with unit-diagonal L.
    for (size_t i = 0; i < n; ++i) {
        uint64_t acc = pb[i];
        for (size_t j = 0; j < i; ++j) acc = F.sub(acc, F.mul(lu_.at(i, j), pb[j]));
        pb[i] = acc;
    }
    // Back substitution with U.
    for (size_t i = n; i-- > 0;) {
        uint64_t acc = pb[i];
        for (size_t j = i + 1; j < n; ++j) acc = F.sub(acc, F.mul(lu_.at(i, j), pb[j]));
        pb[i] = F.mul(acc, F.inv(lu_.at(i, i)));
    }
    return pb;
}

}  // namespace heights::exactalg
