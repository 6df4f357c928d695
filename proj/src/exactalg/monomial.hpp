#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace heights::exactalg {

// Exponent vector packed into a single word: up to 7 variables, 8 bits each,
// with the total degree in the top byte. Degrees in this project stay far
// below 255 (socle degrees are single digits), so overflow checks are cheap
// assertions rather than a representation concern.
//
// The packing is chosen so that degrevlex order is one integer comparison:
// higher total degree wins, and within a degree block the tie-break compares
// the reversed exponent suffix. Storing exponents with the LAST variable in
// the LOWEST bits makes plain uint64 comparison realize "smaller power of the
// last variable is larger", which with the complement trick below gives
// degree reverse lexicographic order.
class Monomial {
   public:
    static constexpr int kMaxVars = 7;

    Monomial() : packed_(0) {}

    static Monomial one() { return Monomial(); }

    static Monomial variable(int idx, int nvars, int power = 1) {
        Monomial m;
        m.set_exp(idx, nvars, power);
        return m;
    }

    int exp(int idx, int nvars) const {
        check_index(idx, nvars);
        return static_cast<int>((packed_ >> shift(idx, nvars)) & 0xffu);
    }

    void set_exp(int idx, int nvars, int e) {
        check_index(idx, nvars);
        if (e < 0 || e > 255) throw std::overflow_error("monomial exponent out of range");
        uint64_t old = (packed_ >> shift(idx, nvars)) & 0xffu;
        packed_ &= ~(0xffull << shift(idx, nvars));
        packed_ |= static_cast<uint64_t>(e) << shift(idx, nvars);
        int deg = degree() - static_cast<int>(old) + e;
        if (deg > 255) throw std::overflow_error("monomial degree out of range");
        packed_ &= ~(0xffull << 56);
        packed_ |= static_cast<uint64_t>(deg) << 56;
    }

    int degree() const { return static_cast<int>(packed_ >> 56); }

    Monomial operator*(const Monomial& o) const {
        Monomial out;
        out.packed_ = packed_ + o.packed_;
        if (out.degree() != degree() + o.degree()) throw std::overflow_error("monomial product overflow");
        return out;
    }

    // Exact division test: every exponent of o must be <= ours.
    bool divisible_by(const Monomial& o, int nvars) const {
        for (int i = 0; i < nvars; ++i)
            if (exp(i, nvars) < o.exp(i, nvars)) return false;
        return true;
    }

    Monomial divide(const Monomial& o, int nvars) const {
        if (!divisible_by(o, nvars)) throw std::domain_error("monomial division not exact");
        Monomial out;
        out.packed_ = packed_ - o.packed_;
        return out;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b, int nvars) {
        Monomial out;
        for (int i = 0; i < nvars; ++i) out.set_exp(i, nvars, std::max(a.exp(i, nvars), b.exp(i, nvars)));
        return out;
    }

    // Degree reverse lexicographic: compare total degree, then the rightmost
    // differing exponent decides with the SMALLER exponent ranked higher.
    // With last-variable-in-low-bits packing this is: compare degree bytes,
    // then compare the exponent payloads with the order REVERSED.
    static bool degrevlex_less(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        uint64_t pa = a.packed_ & kPayloadMask, pb = b.packed_ & kPayloadMask;
        // Rightmost (lowest bits) differing exponent, smaller exponent => larger monomial.
        if (pa == pb) return false;
        uint64_t diff = pa ^ pb;
        int lowbyte = __builtin_ctzll(diff) / 8;
        uint64_t ea = (pa >> (8 * lowbyte)) & 0xffu, eb = (pb >> (8 * lowbyte)) & 0xffu;
        return ea > eb;
    }

    bool operator==(const Monomial& o) const { return packed_ == o.packed_; }
    bool operator!=(const Monomial& o) const { return packed_ != o.packed_; }

    uint64_t packed() const { return packed_; }

    std::string to_string(const std::vector<std::string>& names) const {
        std::string out;
        int nvars = static_cast<int>(names.size());
        for (int i = 0; i < nvars; ++i) {
            int e = exp(i, nvars);
            if (e == 0) continue;
            if (!out.empty()) out += "*";
            out += names[i];
            if (e > 1) out += "^" + std::to_string(e);
        }
        return out.empty() ? "1" : out;
    }

   private:
    static constexpr uint64_t kPayloadMask = (1ull << 56) - 1;

    static int shift(int idx, int nvars) { return 8 * (nvars - 1 - idx); }
    static void check_index(int idx, int nvars) {
        if (nvars < 1 || nvars > kMaxVars) throw std::domain_error("variable count out of range");
        if (idx < 0 || idx >= nvars) throw std::domain_error("variable index out of range");
    }

    uint64_t packed_;
};

struct MonomialDegrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::degrevlex_less(b, a); }
};

}  // namespace heights::exactalg
