#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heights {

// Deterministic Miller-Rabin, correct for all inputs below 3.3e24 and
// overwhelmingly reliable beyond (40 fixed-seed rounds on top of the small
// witness set).
bool is_probable_prime(const mpz_class& n);

// Pollard rho with Brent cycle detection. Returns a nontrivial factor of a
// composite n > 1, or nullopt if the iteration budget is exhausted.
std::optional<mpz_class> pollard_rho(const mpz_class& n, uint64_t max_iters = 1u << 26);

// Full factorization into sorted (prime, exponent) pairs. Factors left
// unresolved within the budget are reported with is_prime = false.
struct FactorPart {
    mpz_class base;
    unsigned exponent;
    bool is_prime;
};
std::vector<FactorPart> factorize(const mpz_class& n, uint64_t rho_budget = 1u << 26);

// Sorted distinct prime divisors of |n|; throws MathError when a composite
// cofactor resists factorization (callers that tolerate partial results use
// factorize directly).
std::vector<mpz_class> prime_divisors(const mpz_class& n);

// Chinese remainder reconstruction: value mod (m1*m2) from residues mod
// coprime m1, m2.
mpz_class crt_pair(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2, const mpz_class& m2);

// Rational reconstruction of r mod m into p/q with |p|, q <= bound (Wang).
// bound defaults to floor(sqrt(m/2)) when null.
std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m,
                                              const mpz_class* bound = nullptr);

// 62-bit primes for modular runs, descending from 2^62. The sequence is fixed
// so that cached modular artifacts stay reproducible.
uint64_t nth_modular_prime(size_t index);

std::string mpz_to_string(const mpz_class& z);
std::string mpq_to_string(const mpq_class& q);
mpq_class mpq_from_string(const std::string& s);  // accepts "p", "p/q", and decimal "a.b" forms

}  // namespace heights
