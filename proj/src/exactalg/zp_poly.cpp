#include "exactalg/zp_poly.hpp"

#include "support/errors.hpp"

namespace heights::exactalg {

ZpPoly ZpPoly::constant(uint64_t v, const ZpCtx* ctx) {
    std::vector<uint64_t> c;
    if (v % ctx->p) c.push_back(v % ctx->p);
    return ZpPoly(std::move(c), ctx);
}

ZpPoly zpoly_mod(const ZPoly& p, const ZpCtx* ctx) {
    std::vector<uint64_t> c;
    c.reserve(p.coeffs().size());
    for (const auto& z : p.coeffs()) c.push_back(mpz_fdiv_ui(z.get_mpz_t(), ctx->p));
    return ZpPoly(std::move(c), ctx);
}

ZpPoly ZpPoly::linear_root(uint64_t r, const ZpCtx* ctx) {
    return ZpPoly({ctx->neg(r % ctx->p), 1}, ctx);
}

ZpPoly ZpPoly::operator+(const ZpPoly& o) const {
    std::vector<uint64_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[i] = ctx_->add(out[i], o.c_[i]);
    return ZpPoly(std::move(out), ctx_);
}

ZpPoly ZpPoly::operator-(const ZpPoly& o) const {
    std::vector<uint64_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[i] = ctx_->sub(out[i], o.c_[i]);
    return ZpPoly(std::move(out), ctx_);
}

ZpPoly ZpPoly::operator*(const ZpPoly& o) const {
    if (is_zero() || o.is_zero()) return ZpPoly(ctx_ ? ctx_ : o.ctx_);
    std::vector<uint64_t> out(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] = ctx_->add(out[i + j], ctx_->mul(c_[i], o.c_[j]));
    }
    return ZpPoly(std::move(out), ctx_);
}

ZpPoly ZpPoly::scaled(uint64_t s) const {
    std::vector<uint64_t> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = ctx_->mul(c_[i], s);
    return ZpPoly(std::move(out), ctx_);
}

std::pair<ZpPoly, ZpPoly> ZpPoly::divrem(const ZpPoly& o) const {
    if (o.is_zero()) throw MathError("polynomial division by zero");
    if (degree() < o.degree()) return {ZpPoly(ctx_), *this};
    std::vector<uint64_t> rem = c_;
    std::vector<uint64_t> quo(degree() - o.degree() + 1, 0);
    uint64_t lead_inv = ctx_->inv(o.c_.back());
    for (int i = degree(); i >= o.degree(); --i) {
        uint64_t q = ctx_->mul(rem[i], lead_inv);
        if (!q) continue;
        quo[i - o.degree()] = q;
        for (int j = 0; j <= o.degree(); ++j)
            rem[i - o.degree() + j] = ctx_->sub(rem[i - o.degree() + j], ctx_->mul(q, o.c_[j]));
    }
    return {ZpPoly(std::move(quo), ctx_), ZpPoly(std::move(rem), ctx_)};
}

uint64_t ZpPoly::eval(uint64_t x) const {
    uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = ctx_->add(ctx_->mul(acc, x), c_[i]);
    return acc;
}

ZpPoly ZpPoly::derivative() const {
    if (c_.size() <= 1) return ZpPoly(ctx_);
    std::vector<uint64_t> out(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = ctx_->mul(c_[i], i % ctx_->p);
    return ZpPoly(std::move(out), ctx_);
}

ZpPoly zp_interpolate(const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys, const ZpCtx* ctx) {
    if (xs.size() != ys.size()) throw UsageError("interpolation node/value count mismatch");
    size_t n = xs.size();
    // Newton divided differences (all denominators are node differences).
    std::vector<uint64_t> coef(ys);
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = n - 1; i >= level; --i) {
            uint64_t dx = ctx->sub(xs[i], xs[i - level]);
            if (!dx) throw UsageError("repeated interpolation node");
            coef[i] = ctx->mul(ctx->sub(coef[i], coef[i - 1]), ctx->inv(dx));
            if (i == level) break;
        }
    }
    // Expand the Newton form.
    ZpPoly acc = ZpPoly::constant(coef[n - 1], ctx);
    for (size_t i = n - 1; i-- > 0;) {
        acc = acc * ZpPoly::linear_root(xs[i], ctx) + ZpPoly::constant(coef[i], ctx);
    }
    return acc;
}

std::optional<std::pair<ZpPoly, ZpPoly>> zp_rational_interpolate(const std::vector<uint64_t>& xs,
                                                                 const std::vector<uint64_t>& ys,
                                                                 int dn, int dd, const ZpCtx* ctx) {
    if (static_cast<int>(xs.size()) < dn + dd + 1) throw UsageError("too few nodes for degree bounds");
    ZpPoly I = zp_interpolate(xs, ys, ctx);
    if (I.is_zero()) return std::make_pair(ZpPoly(ctx), ZpPoly::constant(1, ctx));
    ZpPoly M = ZpPoly::constant(1, ctx);
    for (uint64_t x : xs) M = M * ZpPoly::linear_root(x, ctx);
    // Half-extended Euclid on (M, I): stop at remainder degree <= dn, then
    // num/den = r/v.
    ZpPoly r0 = M, r1 = I;
    ZpPoly v0 = ZpPoly(ctx), v1 = ZpPoly::constant(1, ctx);
    while (!r1.is_zero() && r1.degree() > dn) {
        auto [q, r2] = r0.divrem(r1);
        ZpPoly v2 = v0 - q * v1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    // r1 may be zero when the data is a polynomial of low degree; then the
    // previous line of the sequence holds it.
    ZpPoly num = r1.is_zero() ? r0 : r1;
    ZpPoly den = r1.is_zero() ? v0 : v1;
    if (den.is_zero()) return std::nullopt;
    if (num.degree() > dn || den.degree() > dd) return std::nullopt;
    uint64_t lead_inv = ctx->inv(den.coeffs().back());
    num = num.scaled(lead_inv);
    den = den.scaled(lead_inv);
    for (size_t i = 0; i < xs.size(); ++i) {
        uint64_t dv = den.eval(xs[i]);
        if (!dv) return std::nullopt;
        if (ctx->mul(dv, ys[i]) != num.eval(xs[i])) return std::nullopt;
    }
    return std::make_pair(num, den);
}

}  // namespace heights::exactalg
