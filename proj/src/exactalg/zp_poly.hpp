#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "exactalg/unipoly.hpp"
#include "exactalg/zp.hpp"

namespace heights::exactalg {

// Dense univariate polynomial mod p, ascending coefficients, trimmed.
class ZpPoly {
   public:
    ZpPoly() : ctx_(nullptr) {}
    explicit ZpPoly(const ZpCtx* ctx) : ctx_(ctx) {}
    ZpPoly(std::vector<uint64_t> coeffs, const ZpCtx* ctx) : c_(std::move(coeffs)), ctx_(ctx) { trim(); }
    static ZpPoly constant(uint64_t v, const ZpCtx* ctx);
    static ZpPoly linear_root(uint64_t r, const ZpCtx* ctx);  // x - r

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    const ZpCtx& ctx() const { return *ctx_; }

    ZpPoly operator+(const ZpPoly& o) const;
    ZpPoly operator-(const ZpPoly& o) const;
    ZpPoly operator*(const ZpPoly& o) const;
    ZpPoly scaled(uint64_t s) const;
    std::pair<ZpPoly, ZpPoly> divrem(const ZpPoly& o) const;
    uint64_t eval(uint64_t x) const;
    ZpPoly derivative() const;

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<uint64_t> c_;
    const ZpCtx* ctx_;
};

// Coefficient-wise reduction of an integer polynomial.
ZpPoly zpoly_mod(const ZPoly& p, const ZpCtx* ctx);

// Interpolating polynomial through distinct nodes, Newton form expanded.
ZpPoly zp_interpolate(const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys, const ZpCtx* ctx);

// Rational function recovery from values: finds num/den with deg num <= dn,
// deg den <= dd, den monic, agreeing with the data at every node where den
// does not vanish; needs xs.size() >= dn + dd + 1. Returns nullopt when the
// Euclidean step cannot satisfy the degree bounds or the candidate fails
// verification at some node.
std::optional<std::pair<ZpPoly, ZpPoly>> zp_rational_interpolate(const std::vector<uint64_t>& xs,
                                                                 const std::vector<uint64_t>& ys,
                                                                 int dn, int dd, const ZpCtx* ctx);

}  // namespace heights::exactalg
