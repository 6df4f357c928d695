#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exactalg/monomial.hpp"
#include "exactalg/unipoly.hpp"
#include "support/errors.hpp"

namespace heights::exactalg {

// Multivariate polynomial over a commutative coefficient ring, terms kept in
// descending degrevlex order with no zeros. A polynomial constructed from a
// bare integer has no variable count yet (nvars = -1, constants only); it
// adapts to the other operand's variable count on first combination, which
// lets generic univariate code instantiate MultiPoly coefficients from int
// literals.
template <typename C>
class MultiPoly {
   public:
    MultiPoly() : nvars_(-1) {}
    MultiPoly(int value) : nvars_(-1) {
        if (value != 0) terms_.emplace_back(Monomial::one(), C(value));
    }
    static MultiPoly zero(int nvars) {
        MultiPoly p;
        p.nvars_ = nvars;
        return p;
    }
    static MultiPoly constant(int nvars, C c) {
        MultiPoly p;
        p.nvars_ = nvars;
        if (!coeff_is_zero(c)) p.terms_.emplace_back(Monomial::one(), std::move(c));
        return p;
    }
    static MultiPoly variable(int nvars, int idx) {
        MultiPoly p;
        p.nvars_ = nvars;
        p.terms_.emplace_back(Monomial::variable(idx, nvars), C(1));
        return p;
    }
    static MultiPoly term(int nvars, Monomial m, C c) {
        MultiPoly p;
        p.nvars_ = nvars;
        if (!coeff_is_zero(c)) p.terms_.emplace_back(m, std::move(c));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<std::pair<Monomial, C>>& terms() const { return terms_; }

    int total_degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.front().first.degree();
        return terms_.back().first.degree() == d;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
        return terms_.front().first;
    }
    const C& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return terms_.front().second;
    }
    C constant_coeff() const {
        if (terms_.empty()) return C(0);
        if (terms_.back().first.degree() == 0) return terms_.back().second;
        return C(0);
    }

    MultiPoly operator+(const MultiPoly& o) const { return merged(o, false); }
    MultiPoly operator-(const MultiPoly& o) const { return merged(o, true); }
    MultiPoly operator-() const {
        MultiPoly out = *this;
        for (auto& [m, c] : out.terms_) c = -c;
        return out;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        int nv = joint_nvars(o);
        MultiPoly out;
        out.nvars_ = nv;
        if (is_zero() || o.is_zero()) return out;
        std::map<Monomial, C, MonomialDegrevlexGreater> acc;
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m = ma * mb;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(m, ca * cb);
                else
                    it->second += ca * cb;
            }
        }
        for (auto& [m, c] : acc)
            if (!coeff_is_zero(c)) out.terms_.emplace_back(m, std::move(c));
        return out;
    }
    MultiPoly scaled(const C& s) const {
        MultiPoly out;
        out.nvars_ = nvars_;
        if (coeff_is_zero(s)) return out;
        out.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            C v = c * s;
            if (!coeff_is_zero(v)) out.terms_.emplace_back(m, std::move(v));
        }
        return out;
    }
    MultiPoly times_term(const Monomial& m, const C& s) const {
        MultiPoly out;
        out.nvars_ = nvars_;
        if (coeff_is_zero(s)) return out;
        out.terms_.reserve(terms_.size());
        for (const auto& [mm, c] : terms_) {
            C v = c * s;
            if (!coeff_is_zero(v)) out.terms_.emplace_back(mm * m, std::move(v));
        }
        return out;
    }
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly& operator+=(const MultiPoly& o) {
        *this = *this + o;
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        *this = *this - o;
        return *this;
    }
    MultiPoly& operator*=(const MultiPoly& o) {
        *this = *this * o;
        return *this;
    }

    C coeff_of(const Monomial& m) const {
        for (const auto& [mm, c] : terms_)
            if (mm == m) return c;
        return C(0);
    }

    MultiPoly derivative(int var) const {
        require_sized();
        MultiPoly out;
        out.nvars_ = nvars_;
        for (const auto& [m, c] : terms_) {
            int e = m.exp(var, nvars_);
            if (e == 0) continue;
            Monomial mm = m;
            mm.set_exp(var, nvars_, e - 1);
            C v = c * C(e);
            if (!coeff_is_zero(v)) out.terms_.emplace_back(mm, std::move(v));
        }
        // Dropping an exponent preserves relative degrevlex order of the
        // surviving terms, so the result is already sorted.
        return out;
    }

    // Substitute value for one variable; the variable stays in the ring with
    // exponent zero everywhere.
    MultiPoly substitute(int var, const C& value) const {
        require_sized();
        std::map<Monomial, C, MonomialDegrevlexGreater> acc;
        for (const auto& [m, c] : terms_) {
            int e = m.exp(var, nvars_);
            C v = c;
            for (int i = 0; i < e; ++i) v = v * value;
            if (coeff_is_zero(v)) continue;
            Monomial mm = m;
            mm.set_exp(var, nvars_, 0);
            auto it = acc.find(mm);
            if (it == acc.end())
                acc.emplace(mm, std::move(v));
            else
                it->second += v;
        }
        MultiPoly out;
        out.nvars_ = nvars_;
        for (auto& [m, c] : acc)
            if (!coeff_is_zero(c)) out.terms_.emplace_back(m, std::move(c));
        return out;
    }

    // View in one variable: dense list of coefficient polynomials (which no
    // longer involve that variable).
    UniPoly<MultiPoly> in_variable(int var) const {
        require_sized();
        int dmax = 0;
        for (const auto& [m, c] : terms_) dmax = std::max(dmax, m.exp(var, nvars_));
        std::vector<MultiPoly> coeffs(is_zero() ? 0 : dmax + 1, MultiPoly::zero(nvars_));
        for (const auto& [m, c] : terms_) {
            int e = m.exp(var, nvars_);
            Monomial mm = m;
            mm.set_exp(var, nvars_, 0);
            coeffs[e].terms_.emplace_back(mm, c);
        }
        for (auto& p : coeffs) p.sort_terms();
        return UniPoly<MultiPoly>(std::move(coeffs));
    }

    template <typename V>
    V eval(const std::vector<V>& point) const {
        require_sized();
        if (static_cast<int>(point.size()) != nvars_) throw UsageError("evaluation point arity mismatch");
        V acc = V(0);
        for (const auto& [m, c] : terms_) {
            V term = V(c);
            for (int i = 0; i < nvars_; ++i) {
                int e = m.exp(i, nvars_);
                for (int j = 0; j < e; ++j) term = term * point[i];
            }
            acc = acc + term;
        }
        return acc;
    }

    template <typename C2>
    MultiPoly<C2> map_coeffs(const std::function<C2(const C&)>& f) const {
        MultiPoly<C2> out = MultiPoly<C2>::zero(nvars_);
        for (const auto& [m, c] : terms_) {
            C2 v = f(c);
            if (!coeff_is_zero(v)) out.mutable_terms().emplace_back(m, std::move(v));
        }
        return out;
    }

    std::vector<std::pair<Monomial, C>>& mutable_terms() { return terms_; }
    void set_nvars(int nv) { nvars_ = nv; }
    void sort_terms() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const auto& a, const auto& b) { return Monomial::degrevlex_less(b.first, a.first); });
        // Merge duplicates defensively.
        std::vector<std::pair<Monomial, C>> out;
        for (auto& [m, c] : terms_) {
            if (!out.empty() && out.back().first == m)
                out.back().second += c;
            else
                out.emplace_back(m, std::move(c));
        }
        terms_.clear();
        for (auto& [m, c] : out)
            if (!coeff_is_zero(c)) terms_.emplace_back(m, std::move(c));
    }

    std::string to_string(const std::vector<std::string>& names) const;

   private:
    void require_sized() const {
        if (nvars_ < 1) throw std::logic_error("operation requires a sized polynomial");
    }
    int joint_nvars(const MultiPoly& o) const {
        if (nvars_ == o.nvars_) return nvars_;
        if (nvars_ == -1) return o.nvars_;
        if (o.nvars_ == -1) return nvars_;
        throw UsageError("polynomial variable sets differ");
    }
    MultiPoly merged(const MultiPoly& o, bool subtract) const {
        MultiPoly out;
        out.nvars_ = joint_nvars(o);
        out.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            bool take_a;
            if (i >= terms_.size())
                take_a = false;
            else if (j >= o.terms_.size())
                take_a = true;
            else if (terms_[i].first == o.terms_[j].first) {
                C c = terms_[i].second;
                if (subtract)
                    c -= o.terms_[j].second;
                else
                    c += o.terms_[j].second;
                if (!coeff_is_zero(c)) out.terms_.emplace_back(terms_[i].first, std::move(c));
                ++i;
                ++j;
                continue;
            } else {
                take_a = Monomial::degrevlex_less(o.terms_[j].first, terms_[i].first);
            }
            if (take_a) {
                out.terms_.push_back(terms_[i++]);
            } else {
                auto t = o.terms_[j++];
                if (subtract) t.second = -t.second;
                out.terms_.push_back(std::move(t));
            }
        }
        return out;
    }

    int nvars_;
    std::vector<std::pair<Monomial, C>> terms_;
};

template <typename C>
inline bool coeff_is_zero(const MultiPoly<C>& p) {
    return p.is_zero();
}

using QMultiPoly = MultiPoly<mpq_class>;
using ZMultiPoly = MultiPoly<mpz_class>;

// Exact long division in the monomial order; throws when the division is not
// exact. Used by subresultant sequences over polynomial coefficients.
ZMultiPoly zmultipoly_exact_div(const ZMultiPoly& a, const ZMultiPoly& b);

mpz_class zmultipoly_int_content(const ZMultiPoly& p);

QMultiPoly parse_multipoly(const std::string& text, const std::vector<std::string>& var_names);

ZMultiPoly zmultipoly_from_q(const QMultiPoly& p, mpz_class* denominator_out = nullptr);

template <typename C>
std::string MultiPoly<C>::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    if (static_cast<int>(names.size()) != nvars_) throw UsageError("name list arity mismatch");
    std::string out;
    for (const auto& [m, c] : terms_) {
        std::string cs;
        if constexpr (std::is_same_v<C, mpz_class>) {
            cs = c.get_str();
        } else if constexpr (std::is_same_v<C, mpq_class>) {
            cs = c.get_num().get_str();
            if (c.get_den() != 1) cs += "/" + c.get_den().get_str();
        } else {
            cs = c.to_string();
        }
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (neg) cs = cs.substr(1);
        std::string ms = m.to_string(names);
        if (ms == "1") {
            out += cs;
        } else if (cs == "1") {
            out += ms;
        } else {
            out += cs + "*" + ms;
        }
    }
    return out;
}

}  // namespace heights::exactalg
