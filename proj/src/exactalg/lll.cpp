#include "exactalg/lll.hpp"

#include "support/errors.hpp"

namespace heights::exactalg {

namespace {

mpq_class dot_qq(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

mpz_class round_nearest(const mpq_class& q) {
    // floor(q + 1/2)
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return out;
}

struct Gso {
    std::vector<std::vector<mpq_class>> bstar;
    std::vector<std::vector<mpq_class>> mu;  // mu[i][j], j < i
    std::vector<mpq_class> norms;            // ||b*_i||^2

    void compute(const ZMat& b) {
        size_t n = b.size(), dim = b.empty() ? 0 : b[0].size();
        bstar.assign(n, {});
        mu.assign(n, std::vector<mpq_class>(n, 0));
        norms.assign(n, 0);
        for (size_t i = 0; i < n; ++i) {
            std::vector<mpq_class> v(dim);
            for (size_t j = 0; j < dim; ++j) v[j] = mpq_class(b[i][j]);
            for (size_t j = 0; j < i; ++j) {
                mpq_class num = 0;
                for (size_t k = 0; k < dim; ++k) num += mpq_class(b[i][k]) * bstar[j][k];
                if (norms[j] == 0) throw MathError("dependent rows in lattice basis");
                mpq_class m = num / norms[j];
                mu[i][j] = m;
                for (size_t k = 0; k < dim; ++k) v[k] -= m * bstar[j][k];
            }
            bstar[i] = std::move(v);
            norms[i] = dot_qq(bstar[i], bstar[i]);
            if (norms[i] == 0) throw MathError("dependent rows in lattice basis");
        }
    }
};

}  // namespace

ZMat lll_reduce(const ZMat& basis) {
    if (basis.empty()) return basis;
    ZMat b = basis;
    size_t n = b.size();
    const mpq_class delta(99, 100);
    Gso g;
    g.compute(b);
    size_t k = 1;
    size_t guard = 0;
    const size_t guard_limit = 100000;
    while (k < n) {
        if (++guard > guard_limit) throw MathError("lattice reduction failed to terminate");
        // Size reduction of row k against all earlier rows.
        for (size_t j = k; j-- > 0;) {
            mpz_class q = round_nearest(g.mu[k][j]);
            if (q != 0) {
                for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
                g.compute(b);
            }
        }
        mpq_class lhs = g.norms[k];
        mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norms[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g.compute(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return b;
}

}  // namespace heights::exactalg
