#pragma once

#include "exactalg/unipoly.hpp"
#include "exactalg/zp.hpp"
#include "support/errors.hpp"

namespace heights::exactalg {

// Quotient of integer polynomials in one letter, kept in lowest terms with a
// positive leading coefficient downstairs. Default-constructs to 0 and
// converts from int so it can serve as a coefficient field for the generic
// matrix and multivariate templates.
class RatFunc {
   public:
    RatFunc() : num_(), den_(ZPoly::constant(1)) {}
    RatFunc(int v) : num_(ZPoly::constant(v)), den_(ZPoly::constant(1)) {}
    RatFunc(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }
    explicit RatFunc(const mpq_class& q)
        : num_(ZPoly::constant(q.get_num())), den_(ZPoly::constant(q.get_den())) {}
    static RatFunc t() { return RatFunc(ZPoly::x(), ZPoly::constant(1)); }
    static RatFunc from_qpoly(const QPoly& p) {
        mpz_class den;
        ZPoly num = zpoly_from_q(p, &den);
        return RatFunc(std::move(num), ZPoly::constant(den));
    }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw MathError("division by zero rational function");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    mpq_class eval_q(const mpq_class& t) const {
        mpq_class n = qpoly_from_z(num_).eval_coeff(t);
        mpq_class d = qpoly_from_z(den_).eval_coeff(t);
        if (d == 0) throw MathError("rational function pole at evaluation point");
        return n / d;
    }

    // Reduction mod p at a rational point; throws when p divides a needed
    // denominator so callers can discard the prime.
    uint64_t eval_mod(const ZpCtx& ctx, uint64_t t) const {
        uint64_t n = eval_zpoly_mod(num_, ctx, t);
        uint64_t d = eval_zpoly_mod(den_, ctx, t);
        if (d == 0) throw MathError("rational function denominator vanishes mod p");
        return ctx.mul(n, ctx.inv(d));
    }

    static uint64_t eval_zpoly_mod(const ZPoly& p, const ZpCtx& ctx, uint64_t t) {
        uint64_t acc = 0;
        for (size_t i = p.coeffs().size(); i-- > 0;) {
            acc = ctx.mul(acc, t);
            mpz_class c = p.coeffs()[i] % static_cast<long>(ctx.p);
            if (c < 0) c += static_cast<long>(ctx.p);
            acc = ctx.add(acc, mpz_get_ui(c.get_mpz_t()));
        }
        return acc;
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_polynomial()) {
            if (den_.leading() == 1) return num_.to_string(var);
            return "(" + num_.to_string(var) + ")/" + den_.leading().get_str();
        }
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

   private:
    void canonicalize() {
        if (den_.is_zero()) throw MathError("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = ZPoly::constant(1);
            return;
        }
        ZPoly g = zpoly_gcd(num_, den_);
        num_ = zpoly_exact_div(num_, g);
        den_ = zpoly_exact_div(den_, g);
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    ZPoly num_;
    ZPoly den_;
};

inline bool coeff_is_zero(const RatFunc& r) { return r.is_zero(); }

inline RatFunc coeff_inv(const RatFunc& r) { return RatFunc(1) / r; }

}  // namespace heights::exactalg
