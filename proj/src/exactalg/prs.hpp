#pragma once

#include <stdexcept>
#include <utility>

#include "exactalg/unipoly.hpp"

namespace heights::exactalg {

// Resultant of two univariate polynomials over a commutative ring via the
// subresultant polynomial remainder sequence. The only ring operation beyond
// +,-,* is exact division, supplied as a hook so both integers and
// multivariate integer polynomials can use the same sequence. No content
// stripping is performed here; callers strip what they can beforehand.
template <typename C, typename ExactDiv>
C prs_resultant(UniPoly<C> A, UniPoly<C> B, ExactDiv exact_div) {
    if (A.is_zero() || B.is_zero()) return C(0);
    int sign = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
        std::swap(A, B);
    }
    if (B.degree() == 0) {
        C r = C(1);
        for (int i = 0; i < A.degree(); ++i) r = r * B.leading();
        return sign == 1 ? r : -r;
    }
    C g = C(1), h = C(1);
    int d = 0;
    while (true) {
        d = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
        auto [q, R] = pseudo_divrem(A, B);
        (void)q;
        if (R.is_zero()) {
            // Positive-degree common factor, unless B is already a constant.
            if (B.degree() > 0) return C(0);
        }
        A = std::move(B);
        C scale = g;
        for (int i = 0; i < d; ++i) scale = scale * h;
        UniPoly<C> next;
        {
            std::vector<C> cs;
            cs.reserve(R.coeffs().size());
            for (const auto& c : R.coeffs()) cs.push_back(exact_div(c, scale));
            next = UniPoly<C>(std::move(cs));
        }
        B = std::move(next);
        g = A.leading();
        if (d > 0) {
            C num = C(1);
            for (int i = 0; i < d; ++i) num = num * g;
            C den = C(1);
            for (int i = 0; i < d - 1; ++i) den = den * h;
            h = exact_div(num, den);
        }
        if (B.is_zero()) return C(0);
        if (B.degree() == 0) break;
    }
    // Final step: res = sign * h^(1-degA) * lc(B)^degA with the last A.
    int da = A.degree();
    C num = C(1);
    for (int i = 0; i < da; ++i) num = num * B.leading();
    C den = C(1);
    for (int i = 0; i < da - 1; ++i) den = den * h;
    C r = exact_div(num, den);
    return sign == 1 ? r : -r;
}

}  // namespace heights::exactalg
