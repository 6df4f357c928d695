#include "exactalg/modular_reconstruct.hpp"

#include "exactalg/unipoly.hpp"
#include "support/int_utils.hpp"

namespace heights::exactalg {

namespace {

RatFunc ratfunc_from_q_vectors(const std::vector<mpq_class>& num,
                               const std::vector<mpq_class>& den) {
    mpz_class d1, d2;
    ZPoly zn = zpoly_from_q(QPoly(num), &d1);
    ZPoly zd = zpoly_from_q(QPoly(den), &d2);
    return RatFunc(zn * d2, zd * d1);
}

}  // namespace

std::optional<RatFunc> reconstruct_ratfunc(const std::vector<ModularImage>& images) {
    size_t best_n = 0, best_d = 0;
    for (const auto& im : images) {
        if (im.num.size() + im.den.size() > best_n + best_d) {
            best_n = im.num.size();
            best_d = im.den.size();
        }
    }
    if (best_d == 0) return std::nullopt;
    if (best_n == 0) return RatFunc(0);
    std::vector<mpz_class> nres(best_n, 0), dres(best_d, 0);
    mpz_class mod = 1;
    for (const auto& im : images) {
        if (im.num.size() != best_n || im.den.size() != best_d) continue;
        if (mod == 1) {
            for (size_t i = 0; i < best_n; ++i) nres[i] = im.num[i];
            for (size_t i = 0; i < best_d; ++i) dres[i] = im.den[i];
            mod = mpz_class(im.prime);
            continue;
        }
        mpz_class p(im.prime);
        for (size_t i = 0; i < best_n; ++i) nres[i] = crt_pair(nres[i], mod, im.num[i], p);
        for (size_t i = 0; i < best_d; ++i) dres[i] = crt_pair(dres[i], mod, im.den[i], p);
        mod *= p;
    }
    std::vector<mpq_class> nq(best_n), dq(best_d);
    for (size_t i = 0; i < best_n; ++i) {
        auto r = rational_reconstruct(nres[i], mod);
        if (!r) return std::nullopt;
        nq[i] = *r;
    }
    for (size_t i = 0; i < best_d; ++i) {
        auto r = rational_reconstruct(dres[i], mod);
        if (!r) return std::nullopt;
        dq[i] = *r;
    }
    return ratfunc_from_q_vectors(nq, dq);
}

}  // namespace heights::exactalg
