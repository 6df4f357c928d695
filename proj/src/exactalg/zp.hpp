#pragma once

#include <cstdint>
#include <stdexcept>

namespace heights::exactalg {

// Arithmetic mod a fixed prime p < 2^62. The modulus travels with every value
// rather than living in a global, so computations over different primes can be
// interleaved freely. All representatives are kept in [0, p).
struct ZpCtx {
    uint64_t p;

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const {
        if (a == 0) throw std::domain_error("inverse of 0 mod p");
        // Extended Euclid on signed 128-bit intermediates.
        int64_t t = 0, newt = 1;
        int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a);
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (r != 1) throw std::domain_error("non-invertible element mod p");
        return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p)) : static_cast<uint64_t>(t);
    }
    uint64_t reduce_int64(int64_t v) const {
        int64_t m = v % static_cast<int64_t>(p);
        return m < 0 ? static_cast<uint64_t>(m + static_cast<int64_t>(p)) : static_cast<uint64_t>(m);
    }
};

// Value type pairing a residue with its context, so generic field code
// (matrices, polynomials) can treat Zp like mpq_class.
struct Zp {
    uint64_t v = 0;
    const ZpCtx* ctx = nullptr;

    Zp() = default;
    Zp(uint64_t value, const ZpCtx* c) : v(value), ctx(c) {}
    // Context-free 0/1 constants so generic field templates instantiate;
    // arithmetic on such a value is only valid once a context is attached.
    explicit Zp(int unit) : v(static_cast<uint64_t>(unit)), ctx(nullptr) {}

    Zp operator+(const Zp& o) const { return {ctx->add(v, o.v), ctx}; }
    Zp operator-(const Zp& o) const { return {ctx->sub(v, o.v), ctx}; }
    Zp operator*(const Zp& o) const { return {ctx->mul(v, o.v), ctx}; }
    Zp operator/(const Zp& o) const { return {ctx->mul(v, ctx->inv(o.v)), ctx}; }
    Zp operator-() const { return {ctx->neg(v), ctx}; }
    Zp& operator+=(const Zp& o) {
        v = ctx->add(v, o.v);
        return *this;
    }
    Zp& operator-=(const Zp& o) {
        v = ctx->sub(v, o.v);
        return *this;
    }
    Zp& operator*=(const Zp& o) {
        v = ctx->mul(v, o.v);
        return *this;
    }
    Zp& operator/=(const Zp& o) {
        v = ctx->mul(v, ctx->inv(o.v));
        return *this;
    }
    bool operator==(const Zp& o) const { return v == o.v; }
    bool operator!=(const Zp& o) const { return v != o.v; }
    bool is_zero() const { return v == 0; }
};

inline bool coeff_is_zero(const Zp& z) { return z.v == 0; }

}  // namespace heights::exactalg
