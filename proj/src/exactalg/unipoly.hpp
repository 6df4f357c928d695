#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace heights::exactalg {

inline bool coeff_is_zero(const mpz_class& c) { return c == 0; }
inline bool coeff_is_zero(const mpq_class& c) { return c == 0; }

// Dense univariate polynomial with coefficients in a commutative ring that
// default-constructs to zero and converts from int. Coefficients ascending;
// no trailing zeros, so the zero polynomial has an empty vector.
template <typename C>
class UniPoly {
   public:
    UniPoly() = default;
    explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(C c) {
        UniPoly p;
        if (!coeff_is_zero(c)) p.c_.push_back(std::move(c));
        return p;
    }
    static UniPoly x() {
        UniPoly p;
        p.c_ = {C(0), C(1)};
        return p;
    }
    static UniPoly monomial(C c, size_t deg) {
        UniPoly p;
        if (coeff_is_zero(c)) return p;
        p.c_.assign(deg + 1, C(0));
        p.c_[deg] = std::move(c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention here.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const C& operator[](size_t i) const {
        static const C zero{};
        return i < c_.size() ? c_[i] : zero;
    }
    const C& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<C>& coeffs() const { return c_; }

    void set_coeff(size_t i, C v) {
        if (i >= c_.size()) c_.resize(i + 1, C(0));
        c_[i] = std::move(v);
        trim();
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<C> out(std::max(c_.size(), o.c_.size()), C(0));
        for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
        return UniPoly(std::move(out));
    }
    UniPoly operator-(const UniPoly& o) const {
        std::vector<C> out(std::max(c_.size(), o.c_.size()), C(0));
        for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
        return UniPoly(std::move(out));
    }
    UniPoly operator-() const {
        UniPoly out = *this;
        for (auto& c : out.c_) c = -c;
        return out;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<C> out(c_.size() + o.c_.size() - 1, C(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (coeff_is_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
        }
        return UniPoly(std::move(out));
    }
    UniPoly operator*(const C& s) const {
        if (coeff_is_zero(s)) return {};
        UniPoly out = *this;
        for (auto& c : out.c_) c = c * s;
        out.trim();
        return out;
    }
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<C> out(c_.size() - 1, C(0));
        for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * C(static_cast<int>(i));
        return UniPoly(std::move(out));
    }

    template <typename V>
    V eval(const V& x) const {
        V acc = V(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
        return acc;
    }

    // Horner evaluation into the coefficient ring itself.
    C eval_coeff(const C& x) const {
        C acc = C(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Substitute x -> x + a (Taylor shift), naive repeated Horner.
    UniPoly shift(const C& a) const {
        std::vector<C> work(c_.begin(), c_.end());
        std::vector<C> out;
        out.reserve(work.size());
        size_t n = work.size();
        for (size_t k = 0; k < n; ++k) {
            // Divide synthetically by (x - (-a)) collecting remainders.
            for (size_t i = n - 1; i > k; --i) work[i - 1] += work[i] * a;
            out.push_back(work[k]);
        }
        return UniPoly(std::move(out));
    }

    std::string to_string(const std::string& var = "t") const;

   private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<C> c_;
};

template <typename C>
inline bool coeff_is_zero(const UniPoly<C>& p) {
    return p.is_zero();
}

using ZPoly = UniPoly<mpz_class>;
using QPoly = UniPoly<mpq_class>;

// Field division with remainder; requires invertible leading coefficient.
template <typename C>
std::pair<UniPoly<C>, UniPoly<C>> divrem(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<C> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {UniPoly<C>{}, a};
    std::vector<C> quo(a.degree() - db + 1, C(0));
    for (int i = a.degree(); i >= db; --i) {
        if (coeff_is_zero(rem[i])) continue;
        C q = rem[i] / b.leading();
        quo[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
    }
    return {UniPoly<C>(std::move(quo)), UniPoly<C>(std::move(rem))};
}

template <typename C>
UniPoly<C> poly_gcd_field(UniPoly<C> a, UniPoly<C> b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    // Monic normalization.
    C inv = C(1) / a.leading();
    return a * inv;
}

// Pseudo-division over a ring: lc(b)^(da-db+1) * a = q*b + r with deg r < deg b.
template <typename C>
std::pair<UniPoly<C>, UniPoly<C>> pseudo_divrem(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by zero");
    int da = a.degree(), db = b.degree();
    if (da < db) return {UniPoly<C>{}, a};
    const C& lb = b.leading();
    UniPoly<C> r = a, q;
    int e = da - db + 1;
    while (!r.is_zero() && r.degree() >= db) {
        UniPoly<C> s = UniPoly<C>::monomial(r.leading(), r.degree() - db);
        q = q * lb + s;
        r = r * lb - s * b;
        --e;
    }
    C f = C(1);
    for (int i = 0; i < e; ++i) f = f * lb;
    return {q * f, r * f};
}

mpz_class content(const ZPoly& p);
ZPoly primitive_part(const ZPoly& p);
ZPoly zpoly_gcd(ZPoly a, ZPoly b);
mpz_class zpoly_resultant(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_exact_div(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_from_q(const QPoly& q, mpz_class* denominator_out = nullptr);
QPoly qpoly_from_z(const ZPoly& z);

template <typename C>
std::string UniPoly<C>::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (coeff_is_zero(c_[i])) continue;
        std::string cs;
        if constexpr (std::is_same_v<C, mpz_class> || std::is_same_v<C, mpq_class>) {
            cs = c_[i].get_str();
        } else {
            cs = c_[i].to_string();
        }
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        if (neg) cs = cs.substr(1);
        if (i == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace heights::exactalg
