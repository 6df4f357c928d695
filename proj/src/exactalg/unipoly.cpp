#include "exactalg/unipoly.hpp"

#include "exactalg/prs.hpp"
#include "support/errors.hpp"

namespace heights::exactalg {

mpz_class content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& p) {
    if (p.is_zero()) return p;
    mpz_class g = content(p);
    if (p.leading() < 0) g = -g;
    std::vector<mpz_class> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        out.push_back(q);
    }
    return ZPoly(std::move(out));
}

ZPoly zpoly_exact_div(const ZPoly& a, const ZPoly& b) {
    auto [q, r] = divrem(qpoly_from_z(a), qpoly_from_z(b));
    if (!r.is_zero()) throw MathError("integer polynomial division not exact");
    std::vector<mpz_class> out;
    out.reserve(q.coeffs().size());
    for (const auto& c : q.coeffs()) {
        if (c.get_den() != 1) throw MathError("integer polynomial division not exact");
        out.push_back(c.get_num());
    }
    return ZPoly(std::move(out));
}

ZPoly zpoly_gcd(ZPoly a, ZPoly b) {
    if (a.is_zero()) return primitive_part(b) * abs(content(b));
    if (b.is_zero()) return primitive_part(a) * abs(content(a));
    mpz_class ca = content(a), cb = content(b), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    mpz_class g = 1, h = 1;
    while (b.degree() > 0) {
        int d = a.degree() - b.degree();
        auto [q, r] = pseudo_divrem(a, b);
        (void)q;
        if (r.is_zero()) return primitive_part(b) * c;
        mpz_class scale = g;
        for (int i = 0; i < d; ++i) scale *= h;
        a = std::move(b);
        b = zpoly_exact_div(r, ZPoly::constant(scale));
        g = a.leading();
        if (d > 0) {
            // h <- g^d / h^(d-1), exact by subresultant theory.
            mpz_class num = 1;
            for (int i = 0; i < d; ++i) num *= g;
            mpz_class den = 1;
            for (int i = 0; i < d - 1; ++i) den *= h;
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    if (!b.is_zero()) return ZPoly::constant(c);
    return primitive_part(a) * c;
}

mpz_class zpoly_resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    auto divides_hook = [](const mpz_class& x, const mpz_class& y) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        if (r != 0) throw MathError("subresultant scale division not exact");
        return q;
    };
    return prs_resultant<mpz_class>(a, b, divides_hook);
}

ZPoly zpoly_from_q(const QPoly& q, mpz_class* denominator_out) {
    mpz_class den = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(q.coeffs().size());
    for (const auto& c : q.coeffs()) {
        mpq_class scaled = c * mpq_class(den);
        out.push_back(scaled.get_num());
    }
    if (denominator_out) *denominator_out = den;
    return ZPoly(std::move(out));
}

QPoly qpoly_from_z(const ZPoly& z) {
    std::vector<mpq_class> out;
    out.reserve(z.coeffs().size());
    for (const auto& c : z.coeffs()) out.emplace_back(c);
    return QPoly(std::move(out));
}

}  // namespace heights::exactalg
