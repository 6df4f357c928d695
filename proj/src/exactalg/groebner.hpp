#pragma once

#include <set>
#include <tuple>
#include <vector>

#include "exactalg/multipoly.hpp"
#include "exactalg/zp.hpp"

namespace heights::exactalg {

inline mpq_class coeff_inv(const mpq_class& c) { return 1 / c; }
inline Zp coeff_inv(const Zp& c) { return Zp{c.ctx->inv(c.v), c.ctx}; }

// Reduced degrevlex basis, optionally carrying for each element its
// representation in terms of the original generators so reductions can be
// exported as exact certificates.
template <typename C>
struct GroebnerBasis {
    std::vector<MultiPoly<C>> gens;
    std::vector<MultiPoly<C>> basis;
    std::vector<std::vector<MultiPoly<C>>> reps;  // basis[i] = sum reps[i][g] * gens[g]
    int nvars = 0;
    bool tracked = false;
};

// Division with remainder against a polynomial list. Writes the quotient on
// each divisor into quotients_out when non-null. The remainder has no term
// divisible by any divisor leading monomial.
template <typename C>
MultiPoly<C> poly_reduce(const MultiPoly<C>& f, const std::vector<MultiPoly<C>>& divisors,
                         std::vector<MultiPoly<C>>* quotients_out) {
    int nv = f.nvars();
    if (quotients_out) quotients_out->assign(divisors.size(), MultiPoly<C>::zero(nv));
    MultiPoly<C> rem = MultiPoly<C>::zero(nv);
    MultiPoly<C> h = f;
    while (!h.is_zero()) {
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            const auto& g = divisors[i];
            if (g.is_zero()) continue;
            if (!h.leading_monomial().divisible_by(g.leading_monomial(), nv)) continue;
            Monomial mq = h.leading_monomial().divide(g.leading_monomial(), nv);
            C cq = h.leading_coeff() * coeff_inv(g.leading_coeff());
            h -= g.times_term(mq, cq);
            if (quotients_out) (*quotients_out)[i] += MultiPoly<C>::term(nv, mq, cq);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem += MultiPoly<C>::term(nv, h.leading_monomial(), h.leading_coeff());
            h -= MultiPoly<C>::term(nv, h.leading_monomial(), h.leading_coeff());
        }
    }
    return rem;
}

template <typename C>
GroebnerBasis<C> groebner_basis(const std::vector<MultiPoly<C>>& gens, bool track = false);

// Normal form against a reduced basis; when the basis is tracked and
// cofactors_out is non-null, also returns cofactors on the ORIGINAL
// generators with f = sum cofactors[g] * gens[g] + nf.
template <typename C>
MultiPoly<C> normal_form(const MultiPoly<C>& f, const GroebnerBasis<C>& gb,
                         std::vector<MultiPoly<C>>* cofactors_out = nullptr);

// The quotient ring basis: monomials of the given total degree not divisible
// by any leading monomial of the basis.
template <typename C>
std::vector<Monomial> standard_monomials_of_degree(const GroebnerBasis<C>& gb, int degree);

std::vector<Monomial> monomials_of_degree(int nvars, int degree);

// ---- implementation ----

template <typename C>
GroebnerBasis<C> groebner_basis(const std::vector<MultiPoly<C>>& gens, bool track) {
    if (gens.empty()) throw UsageError("empty generator list");
    GroebnerBasis<C> gb;
    gb.gens = gens;
    gb.tracked = track;
    int nv = -1;
    for (const auto& g : gens)
        if (g.nvars() >= 1) nv = g.nvars();
    if (nv < 1) throw UsageError("generators carry no variables");
    gb.nvars = nv;

    struct Work {
        MultiPoly<C> p;
        std::vector<MultiPoly<C>> rep;
    };
    std::vector<Work> B;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) continue;
        Work w;
        w.p = gens[i];
        if (track) {
            w.rep.assign(gens.size(), MultiPoly<C>::zero(nv));
            w.rep[i] = MultiPoly<C>::term(nv, Monomial::one(), C(1));
        }
        B.push_back(std::move(w));
    }
    if (B.empty()) throw UsageError("all generators are zero");

    auto reduce_tracked = [&](const MultiPoly<C>& f, const std::vector<MultiPoly<C>>& frep) -> Work {
        Work out;
        out.p = MultiPoly<C>::zero(nv);
        if (track) out.rep = frep;
        MultiPoly<C> h = f;
        while (!h.is_zero()) {
            bool hit = false;
            for (const auto& w : B) {
                if (!h.leading_monomial().divisible_by(w.p.leading_monomial(), nv)) continue;
                Monomial mq = h.leading_monomial().divide(w.p.leading_monomial(), nv);
                C cq = h.leading_coeff() * coeff_inv(w.p.leading_coeff());
                h -= w.p.times_term(mq, cq);
                if (track) {
                    MultiPoly<C> t = MultiPoly<C>::term(nv, mq, cq);
                    for (size_t g = 0; g < out.rep.size(); ++g) out.rep[g] -= t * w.rep[g];
                }
                hit = true;
                break;
            }
            if (!hit) {
                out.p += MultiPoly<C>::term(nv, h.leading_monomial(), h.leading_coeff());
                h -= MultiPoly<C>::term(nv, h.leading_monomial(), h.leading_coeff());
            }
        }
        return out;
    };

    // Pair queue keyed by lcm degree (normal selection).
    std::set<std::tuple<int, size_t, size_t>> pairs;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            Monomial l = Monomial::lcm(B[i].p.leading_monomial(), B[j].p.leading_monomial(), nv);
            pairs.insert({l.degree(), i, j});
        }
    };
    for (size_t j = 1; j < B.size(); ++j) push_pairs(j);

    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        const Monomial &mi = B[i].p.leading_monomial(), &mj = B[j].p.leading_monomial();
        Monomial l = Monomial::lcm(mi, mj, nv);
        // Product criterion: coprime leading monomials reduce to zero.
        if (l.degree() == mi.degree() + mj.degree()) continue;
        Monomial qi = l.divide(mi, nv), qj = l.divide(mj, nv);
        MultiPoly<C> s = B[i].p.times_term(qi, coeff_inv(B[i].p.leading_coeff())) -
                         B[j].p.times_term(qj, coeff_inv(B[j].p.leading_coeff()));
        std::vector<MultiPoly<C>> srep;
        if (track) {
            srep.assign(gens.size(), MultiPoly<C>::zero(nv));
            MultiPoly<C> ti = MultiPoly<C>::term(nv, qi, coeff_inv(B[i].p.leading_coeff()));
            MultiPoly<C> tj = MultiPoly<C>::term(nv, qj, coeff_inv(B[j].p.leading_coeff()));
            for (size_t g = 0; g < gens.size(); ++g) srep[g] = ti * B[i].rep[g] - tj * B[j].rep[g];
        }
        Work w = reduce_tracked(s, srep);
        if (w.p.is_zero()) continue;
        B.push_back(std::move(w));
        push_pairs(B.size() - 1);
    }

    // Interreduce to the unique reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < B.size(); ++i) {
            std::vector<MultiPoly<C>> others;
            std::vector<size_t> omap;
            for (size_t j = 0; j < B.size(); ++j)
                if (j != i && !B[j].p.is_zero()) {
                    others.push_back(B[j].p);
                    omap.push_back(j);
                }
            if (B[i].p.is_zero()) continue;
            std::vector<MultiPoly<C>> quot;
            MultiPoly<C> r = poly_reduce(B[i].p, others, track ? &quot : nullptr);
            if (r != B[i].p) {
                changed = true;
                if (track) {
                    for (size_t k = 0; k < others.size(); ++k) {
                        if (quot[k].is_zero()) continue;
                        for (size_t g = 0; g < gens.size(); ++g)
                            B[i].rep[g] -= quot[k] * B[omap[k]].rep[g];
                    }
                }
                B[i].p = std::move(r);
            }
        }
        // Drop zeros.
        std::vector<Work> keep;
        for (auto& w : B)
            if (!w.p.is_zero()) keep.push_back(std::move(w));
        if (keep.size() != B.size()) changed = true;
        B = std::move(keep);
    }
    // Monic normalization and deterministic order (descending leading monomial).
    for (auto& w : B) {
        C inv = coeff_inv(w.p.leading_coeff());
        w.p = w.p.scaled(inv);
        if (track)
            for (auto& r : w.rep) r = r.scaled(inv);
    }
    std::sort(B.begin(), B.end(), [&](const Work& a, const Work& b) {
        return Monomial::degrevlex_less(b.p.leading_monomial(), a.p.leading_monomial());
    });
    for (auto& w : B) {
        gb.basis.push_back(w.p);
        if (track) gb.reps.push_back(w.rep);
    }
    return gb;
}

template <typename C>
MultiPoly<C> normal_form(const MultiPoly<C>& f, const GroebnerBasis<C>& gb,
                         std::vector<MultiPoly<C>>* cofactors_out) {
    if (cofactors_out && !gb.tracked) throw UsageError("cofactor request on an untracked basis");
    std::vector<MultiPoly<C>> quot;
    MultiPoly<C> nf = poly_reduce(f, gb.basis, cofactors_out ? &quot : nullptr);
    if (cofactors_out) {
        cofactors_out->assign(gb.gens.size(), MultiPoly<C>::zero(gb.nvars));
        for (size_t i = 0; i < gb.basis.size(); ++i) {
            if (quot[i].is_zero()) continue;
            for (size_t g = 0; g < gb.gens.size(); ++g)
                (*cofactors_out)[g] += quot[i] * gb.reps[i][g];
        }
    }
    return nf;
}

template <typename C>
std::vector<Monomial> standard_monomials_of_degree(const GroebnerBasis<C>& gb, int degree) {
    std::vector<Monomial> out;
    for (const Monomial& m : monomials_of_degree(gb.nvars, degree)) {
        bool divisible = false;
        for (const auto& g : gb.basis)
            if (m.divisible_by(g.leading_monomial(), gb.nvars)) {
                divisible = true;
                break;
            }
        if (!divisible) out.push_back(m);
    }
    return out;
}

}  // namespace heights::exactalg
