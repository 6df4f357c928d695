#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "exactalg/zp.hpp"
#include "support/errors.hpp"

namespace heights::exactalg {

// Dense matrix over a fixed prime field, row-major uint64 storage. The
// context is borrowed, not owned; callers keep it alive.
class ZpMat {
   public:
    ZpMat() : rows_(0), cols_(0), ctx_(nullptr) {}
    ZpMat(size_t rows, size_t cols, const ZpCtx* ctx)
        : rows_(rows), cols_(cols), a_(rows * cols, 0), ctx_(ctx) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const ZpCtx& ctx() const { return *ctx_; }
    uint64_t& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    uint64_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    uint64_t* row(size_t i) { return a_.data() + i * cols_; }
    const uint64_t* row(size_t i) const { return a_.data() + i * cols_; }

    ZpMat operator*(const ZpMat& o) const {
        if (cols_ != o.rows_) throw UsageError("matrix product shape mismatch");
        ZpMat out(rows_, o.cols_, ctx_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                uint64_t v = at(i, k);
                if (!v) continue;
                const uint64_t* orow = o.row(k);
                uint64_t* trow = out.row(i);
                for (size_t j = 0; j < o.cols_; ++j)
                    trow[j] = ctx_->add(trow[j], ctx_->mul(v, orow[j]));
            }
        return out;
    }

    std::vector<uint64_t> apply(const std::vector<uint64_t>& v) const {
        if (v.size() != cols_) throw UsageError("matrix-vector shape mismatch");
        std::vector<uint64_t> out(rows_, 0);
        for (size_t i = 0; i < rows_; ++i) {
            const uint64_t* r = row(i);
            uint64_t acc = 0;
            for (size_t j = 0; j < cols_; ++j) acc = ctx_->add(acc, ctx_->mul(r[j], v[j]));
            out[i] = acc;
        }
        return out;
    }

   private:
    size_t rows_, cols_;
    std::vector<uint64_t> a_;
    const ZpCtx* ctx_;
};

// Row echelon reduction; returns pivot columns. Reduces fully (unit pivots,
// zeros above and below).
std::vector<size_t> zp_rref_inplace(ZpMat& m, size_t pivot_col_limit);

std::vector<std::vector<uint64_t>> zp_kernel_basis(const ZpMat& A);

std::optional<ZpMat> zp_inverse(const ZpMat& A);

// PA = LU factorization for repeated solves against the same matrix.
class ZpLU {
   public:
    // Fails (singular = true) when the matrix is not invertible.
    explicit ZpLU(const ZpMat& A);
    bool singular() const { return singular_; }
    std::vector<uint64_t> solve(std::vector<uint64_t> b) const;

   private:
    ZpMat lu_;
    std::vector<size_t> perm_;
    bool singular_ = false;
};

}  // namespace heights::exactalg
