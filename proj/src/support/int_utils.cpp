#include "support/int_utils.hpp"

#include <algorithm>
#include <map>

#include "support/errors.hpp"

namespace heights {

namespace {

mpz_class power_mod(mpz_class base, mpz_class exp, const mpz_class& mod) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

bool miller_rabin_witness(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long r) {
    if (a % n == 0) return false;
    mpz_class x = power_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const unsigned long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                                 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned long p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    mpz_class d = n - 1;
    unsigned long r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++r;
    }
    // Deterministic base set for 64-bit-plus territory, then fixed pseudo
    // random rounds for very large candidates.
    static const unsigned long det_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long a : det_bases) {
        if (miller_rabin_witness(n, mpz_class(a), d, r)) return false;
    }
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEuL);
    for (int i = 0; i < 40; ++i) {
        mpz_class a = rng.get_z_range(n - 3) + 2;
        if (miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

std::optional<mpz_class> pollard_rho(const mpz_class& n, uint64_t max_iters) {
    if (n % 2 == 0) return mpz_class(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5EEDuL);
    for (int attempt = 0; attempt < 24; ++attempt) {
        mpz_class c = rng.get_z_range(n - 2) + 1;
        mpz_class x = rng.get_z_range(n - 2) + 2;
        mpz_class y = x, q = 1, g = 1, xs = x;
        uint64_t iter = 0;
        const uint64_t batch = 128;
        while (g == 1 && iter < max_iters) {
            xs = x;
            for (uint64_t i = 0; i < batch && iter < max_iters; ++i, ++iter) {
                x = (x * x + c) % n;
                y = (y * y + c) % n;
                y = (y * y + c) % n;
                mpz_class diff = x - y;
                if (diff < 0) diff += n;
                if (diff == 0) break;
                q = (q * diff) % n;
            }
            g = gcd(q, n);
            if (g == n) {
                // Batch overshot; redo slowly from the saved point.
                g = 1;
                mpz_class xi = xs, yi = xs;
                do {
                    xi = (xi * xi + c) % n;
                    yi = (yi * yi + c) % n;
                    yi = (yi * yi + c) % n;
                    mpz_class diff = xi - yi;
                    if (diff < 0) diff += n;
                    if (diff == 0) break;
                    g = gcd(diff, n);
                } while (g == 1);
                break;
            }
        }
        if (g > 1 && g < n) return g;
    }
    return std::nullopt;
}

std::vector<FactorPart> factorize(const mpz_class& n_in, uint64_t rho_budget) {
    std::map<mpz_class, unsigned> primes;
    std::vector<FactorPart> leftovers;
    mpz_class n = abs(n_in);
    if (n <= 1) return {};
    for (unsigned long p = 2; p < 100000; p = (p == 2 ? 3 : p + 2)) {
        while (n % p == 0) {
            primes[mpz_class(p)]++;
            n /= p;
        }
        if (n == 1) break;
    }
    std::vector<mpz_class> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (is_probable_prime(m)) {
            primes[m]++;
            continue;
        }
        // Perfect power check before rho: rho stalls on p^k with small p count.
        for (unsigned long k = 2; k <= 64; ++k) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
                m = 1;
                break;
            }
        }
        if (m == 1) continue;
        auto f = pollard_rho(m, rho_budget);
        if (!f) {
            leftovers.push_back({m, 1, false});
            continue;
        }
        stack.push_back(*f);
        stack.push_back(m / *f);
    }
    std::vector<FactorPart> out;
    for (auto& [p, e] : primes) out.push_back({p, e, true});
    for (auto& l : leftovers) out.push_back(l);
    return out;
}

std::vector<mpz_class> prime_divisors(const mpz_class& n) {
    auto parts = factorize(n);
    std::vector<mpz_class> out;
    for (auto& part : parts) {
        if (!part.is_prime)
            throw MathError("factorization incomplete: composite cofactor " + mpz_to_string(part.base));
        out.push_back(part.base);
    }
    std::sort(out.begin(), out.end());
    return out;
}

mpz_class crt_pair(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2, const mpz_class& m2) {
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (g != 1) throw MathError("crt_pair: moduli not coprime");
    mpz_class m = m1 * m2;
    mpz_class out = (r1 * t % m) * m2 % m + (r2 * s % m) * m1 % m;
    out %= m;
    if (out < 0) out += m;
    return out;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& r_in, const mpz_class& m,
                                              const mpz_class* bound_in) {
    mpz_class bound;
    if (bound_in) {
        bound = *bound_in;
    } else {
        mpz_class half = m / 2;
        mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    }
    mpz_class r0 = m, r1 = r_in % m;
    if (r1 < 0) r1 += m;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (abs(t1) > bound) return std::nullopt;
    if (gcd(r1, t1) != 1) return std::nullopt;
    mpq_class q(r1, t1);
    q.canonicalize();
    return q;
}

uint64_t nth_modular_prime(size_t index) {
    static std::vector<uint64_t> cache;
    static uint64_t cursor = (uint64_t(1) << 62);
    while (cache.size() <= index) {
        uint64_t candidate = cursor - 1;
        while (!is_probable_prime(mpz_class(static_cast<unsigned long>(candidate)))) --candidate;
        cache.push_back(candidate);
        cursor = candidate;
    }
    return cache[index];
}

std::string mpz_to_string(const mpz_class& z) { return z.get_str(); }

std::string mpq_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class mpq_from_string(const std::string& s) {
    std::string trimmed;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) throw UsageError("empty rational literal");
    auto dot = trimmed.find('.');
    if (dot != std::string::npos) {
        std::string digits = trimmed.substr(0, dot) + trimmed.substr(dot + 1);
        size_t frac_len = trimmed.size() - dot - 1;
        mpq_class num(digits);
        mpz_class den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        mpq_class out = num / mpq_class(den);
        out.canonicalize();
        return out;
    }
    mpq_class out;
    if (out.set_str(trimmed, 10) != 0) throw UsageError("bad rational literal: " + s);
    out.canonicalize();
    if (out.get_den() == 0) throw UsageError("zero denominator in rational literal: " + s);
    return out;
}

}  // namespace heights
