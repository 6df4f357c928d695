#include "griffiths_dwork/reduction.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "exactalg/dixon.hpp"
#include "exactalg/groebner.hpp"
#include "exactalg/modular_reconstruct.hpp"
#include "exactalg/zp.hpp"
#include "exactalg/zp_matrix.hpp"
#include "exactalg/zp_poly.hpp"
#include "support/errors.hpp"
#include "support/int_utils.hpp"

namespace heights::gd {

using exactalg::Monomial;
using exactalg::MultiPoly;
using exactalg::QMultiPoly;
using exactalg::RatFunc;
using exactalg::RatFuncPoly;
using exactalg::ZPoly;

mpz_class jacobian_ring_dimension(int nvars, int d, int degree) {
    if (degree < 0 || degree > nvars * (d - 2)) return 0;
    // Coefficients of (1 + u + ... + u^{d-2})^nvars up to the degree asked for.
    std::vector<mpz_class> acc{1};
    for (int rep = 0; rep < nvars; ++rep) {
        std::vector<mpz_class> next(std::min(degree, static_cast<int>(acc.size()) + d - 3) + 1, 0);
        for (size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0) continue;
            for (int j = 0; j <= d - 2 && i + j < next.size(); ++j) next[i + j] += acc[i];
        }
        acc = std::move(next);
    }
    return degree < static_cast<int>(acc.size()) ? acc[degree] : 0;
}

namespace {

using ZMultiPoly = MultiPoly<ZPoly>;

ZPoly zpoly_lcm(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) throw UsageError("lcm of a zero polynomial");
    return exactalg::zpoly_exact_div(a * b, exactalg::zpoly_gcd(a, b));
}

void lcm_of_denominators(const RatFuncPoly& p, ZPoly& acc) {
    for (const auto& [m, c] : p.terms()) {
        (void)m;
        if (c.den().degree() > 0 || c.den().coeffs()[0] != 1) acc = zpoly_lcm(acc, c.den());
    }
}

// scale must be divisible by every coefficient denominator of p.
ZMultiPoly cleared(const RatFuncPoly& p, const ZPoly& scale) {
    ZMultiPoly out = ZMultiPoly::zero(p.nvars());
    auto& terms = out.mutable_terms();
    for (const auto& [m, c] : p.terms())
        terms.emplace_back(m, c.num() * exactalg::zpoly_exact_div(scale, c.den()));
    out.sort_terms();
    return out;
}

// Standard monomials of the specialized Jacobian ideal modulo a prime, taken
// at one parameter value. Returns monomials for degrees 0..socle, or nullopt
// when the specialization is unusable (prime divides a denominator, or the
// reduced ideal has the wrong codimension).
std::optional<std::map<int, std::vector<Monomial>>> modular_complement(
    const HypersurfaceFamily& fam, const std::vector<RatFuncPoly>& partials, size_t prime_index,
    uint64_t tau) {
    exactalg::ZpCtx ctx{nth_modular_prime(prime_index)};
    int nv = fam.nvars();
    std::vector<MultiPoly<exactalg::Zp>> gens;
    try {
        for (const auto& p : partials) {
            auto g = p.map_coeffs<exactalg::Zp>(
                [&](const RatFunc& c) { return exactalg::Zp(c.eval_mod(ctx, tau), &ctx); });
            if (g.is_zero()) return std::nullopt;
            gens.push_back(std::move(g));
        }
    } catch (const MathError&) {
        return std::nullopt;
    }
    auto gb = exactalg::groebner_basis(gens);
    std::map<int, std::vector<Monomial>> out;
    int socle = nv * (fam.degree_d - 2);
    for (int deg = 0; deg <= socle; ++deg) {
        auto mons = exactalg::standard_monomials_of_degree(gb, deg);
        std::reverse(mons.begin(), mons.end());
        if (mpz_class(static_cast<long>(mons.size())) !=
            jacobian_ring_dimension(nv, fam.degree_d, deg))
            return std::nullopt;
        out[deg] = std::move(mons);
    }
    // A complete intersection leaves nothing past the socle degree.
    if (!exactalg::standard_monomials_of_degree(gb, socle + 1).empty()) return std::nullopt;
    return out;
}

}  // namespace

bool decomposition_identity_holds(const RatFuncPoly& input,
                                  const std::vector<RatFuncPoly>& cofactors,
                                  const RatFuncPoly& remainder,
                                  const std::vector<RatFuncPoly>& partials) {
    ZPoly g = ZPoly::constant(1), h = ZPoly::constant(1);
    lcm_of_denominators(input, g);
    for (const auto& c : cofactors) lcm_of_denominators(c, g);
    lcm_of_denominators(remainder, g);
    for (const auto& p : partials) lcm_of_denominators(p, h);
    ZPoly gh = g * h;
    ZMultiPoly lhs = cleared(input, gh);
    ZMultiPoly rhs = cleared(remainder, gh);
    for (size_t i = 0; i < partials.size(); ++i) {
        if (cofactors[i].is_zero()) continue;
        rhs += cleared(cofactors[i], g) * cleared(partials[i], h);
    }
    return lhs == rhs;
}

ReductionEngine::ReductionEngine(HypersurfaceFamily fam)
    : fam_(std::move(fam)),
      backend_(fam_.nvars() <= 3 ? Backend::kDense : Backend::kModular) {
    init();
}

ReductionEngine::ReductionEngine(HypersurfaceFamily fam, Backend backend)
    : fam_(std::move(fam)), backend_(backend) {
    init();
}

void ReductionEngine::init() {
    fam_.validate();
    if (fam_.nvars() > Monomial::kMaxVars - 1)
        throw UsageError("too many variables for packed monomials");
    for (int i = 0; i < fam_.nvars(); ++i) partials_.push_back(fam_.partial(i));
    init_complements();
    for (int k = 1; k <= fam_.max_pole_order(); ++k) {
        int deg = fam_.numerator_degree(k);
        if (deg < 0) continue;
        for (const Monomial& m : complement(deg)) basis_.push_back(BasisElement{m, k});
    }
}

void ReductionEngine::init_complements() {
    // Two independent modular specializations must agree on the monomial
    // complement; the exact solves later certify every individual
    // decomposition, so this agreement only pins down one canonical set.
    static const uint64_t kTaus[] = {2, 3, 5, 7, 11, 13};
    std::optional<std::map<int, std::vector<Monomial>>> first;
    size_t prime_index = 0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        uint64_t tau = kTaus[attempt % 6];
        auto got = modular_complement(fam_, partials_, prime_index++, tau);
        if (!got) continue;
        if (!first) {
            first = std::move(got);
            continue;
        }
        if (*first == *got) {
            complements_ = std::move(*first);
            return;
        }
        first = std::move(got);
    }
    throw MathError("generic fiber looks singular: no two specializations agree on the monomial complement");
}

const std::vector<Monomial>& ReductionEngine::complement(int degree) const {
    static const std::vector<Monomial> kEmpty;
    auto it = complements_.find(degree);
    return it == complements_.end() ? kEmpty : it->second;
}

std::vector<ResidueForm> ReductionEngine::basis_forms() const {
    std::vector<ResidueForm> out;
    out.reserve(basis_.size());
    for (const auto& b : basis_)
        out.push_back(ResidueForm{RatFuncPoly::term(fam_.nvars(), b.monomial, RatFunc(1)),
                                  b.pole_order});
    return out;
}

size_t ReductionEngine::basis_index(const Monomial& m, int pole_order) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].pole_order == pole_order && basis_[i].monomial == m) return i;
    throw UsageError("monomial is not a basis element at this pole order");
}

size_t ReductionEngine::filtration_block_rows() const {
    int cutoff = (fam_.dim_n + 1) / 2;
    size_t rows = 0;
    for (const auto& b : basis_)
        if (b.pole_order <= cutoff) ++rows;
    return rows;
}

const ReductionEngine::DegreePiece& ReductionEngine::piece(int degree) const {
    auto it = pieces_.find(degree);
    if (it != pieces_.end()) return it->second;
    DegreePiece p;
    p.row_monomials = exactalg::monomials_of_degree(fam_.nvars(), degree);
    int mdeg = degree - (fam_.degree_d - 1);
    if (mdeg >= 0) {
        for (int v = 0; v < fam_.nvars(); ++v)
            for (const Monomial& m : exactalg::monomials_of_degree(fam_.nvars(), mdeg))
                p.columns.emplace_back(v, m);
    }
    p.complement = complement(degree);
    return pieces_.emplace(degree, std::move(p)).first->second;
}

void ReductionEngine::decompose_batch(const std::vector<const RatFuncPoly*>& inputs, int degree,
                                      std::vector<std::vector<RatFuncPoly>>& cofs,
                                      std::vector<RatFuncPoly>& rems) const {
    if (backend_ == Backend::kDense)
        decompose_dense(inputs, degree, cofs, rems);
    else
        decompose_modular(inputs, degree, cofs, rems);
}

void ReductionEngine::decompose_dense(const std::vector<const RatFuncPoly*>& inputs, int degree,
                                      std::vector<std::vector<RatFuncPoly>>& cofs,
                                      std::vector<RatFuncPoly>& rems) const {
    int nv = fam_.nvars();
    const DegreePiece& p = piece(degree);
    std::map<uint64_t, size_t> row_of;
    for (size_t r = 0; r < p.row_monomials.size(); ++r) row_of[p.row_monomials[r].packed()] = r;

    size_t ncols = p.columns.size() + p.complement.size();
    exactalg::Mat<RatFunc> M(p.row_monomials.size(), ncols);
    for (size_t c = 0; c < p.columns.size(); ++c) {
        auto [v, m] = p.columns[c];
        RatFuncPoly gen = partials_[v].times_term(m, RatFunc(1));
        for (const auto& [mm, cc] : gen.terms()) M.at(row_of.at(mm.packed()), c) = cc;
    }
    for (size_t j = 0; j < p.complement.size(); ++j)
        M.at(row_of.at(p.complement[j].packed()), p.columns.size() + j) = RatFunc(1);

    cofs.assign(inputs.size(), {});
    rems.assign(inputs.size(), RatFuncPoly::zero(nv));
    for (size_t b = 0; b < inputs.size(); ++b) {
        cofs[b].assign(nv, RatFuncPoly::zero(nv));
        std::vector<RatFunc> rhs(p.row_monomials.size(), RatFunc(0));
        for (const auto& [m, c] : inputs[b]->terms()) {
            auto it = row_of.find(m.packed());
            if (it == row_of.end())
                throw UsageError("numerator is not homogeneous of the declared degree");
            rhs[it->second] = c;
        }
        auto sol = exactalg::solve_exact(M, rhs);
        if (!sol.consistent)
            throw MathError("numerator fails to decompose in degree " + std::to_string(degree));
        for (size_t c = 0; c < p.columns.size(); ++c) {
            if (exactalg::coeff_is_zero(sol.particular[c])) continue;
            auto [v, m] = p.columns[c];
            cofs[b][v] += RatFuncPoly::term(nv, m, sol.particular[c]);
        }
        for (size_t j = 0; j < p.complement.size(); ++j) {
            const RatFunc& c = sol.particular[p.columns.size() + j];
            if (!exactalg::coeff_is_zero(c)) rems[b] += RatFuncPoly::term(nv, p.complement[j], c);
        }
    }
}

void ReductionEngine::decompose_modular(const std::vector<const RatFuncPoly*>& inputs, int degree,
                                        std::vector<std::vector<RatFuncPoly>>& cofs,
                                        std::vector<RatFuncPoly>& rems) const {
    int nv = fam_.nvars();
    const DegreePiece& pc = piece(degree);
    size_t nrows = pc.row_monomials.size();
    size_t ncols = pc.columns.size() + pc.complement.size();
    size_t nb = inputs.size();
    std::map<uint64_t, size_t> row_of;
    for (size_t r = 0; r < nrows; ++r) row_of[pc.row_monomials[r].packed()] = r;

    // Sparse symbolic entries per column and right-hand side.
    std::vector<std::vector<std::pair<size_t, RatFunc>>> colent(ncols);
    std::vector<long> col_tdeg(ncols, 0);
    for (size_t c = 0; c < pc.columns.size(); ++c) {
        auto [v, m] = pc.columns[c];
        RatFuncPoly gen = partials_[v].times_term(m, RatFunc(1));
        for (const auto& [mm, cc] : gen.terms()) {
            col_tdeg[c] = std::max<long>(col_tdeg[c], cc.num().degree() + cc.den().degree());
            colent[c].emplace_back(row_of.at(mm.packed()), cc);
        }
    }
    for (size_t j = 0; j < pc.complement.size(); ++j)
        colent[pc.columns.size() + j].emplace_back(row_of.at(pc.complement[j].packed()), RatFunc(1));

    std::vector<std::vector<std::pair<size_t, RatFunc>>> rhsent(nb);
    long rhs_tdeg = 0;
    for (size_t b = 0; b < nb; ++b) {
        for (const auto& [m, c] : inputs[b]->terms()) {
            auto it = row_of.find(m.packed());
            if (it == row_of.end())
                throw UsageError("numerator is not homogeneous of the declared degree");
            rhs_tdeg = std::max<long>(rhs_tdeg, c.num().degree() + c.den().degree());
            rhsent[b].emplace_back(it->second, c);
        }
    }

    // Canonical pivot set: leftmost independent columns, confirmed by two
    // agreeing specializations. Complement columns are unit vectors on
    // quotient monomials, so they always end up among the pivots and the
    // remainder coordinates are the canonical quotient coordinates.
    static const uint64_t kTaus[] = {2, 3, 5, 7, 11, 13, 17, 19};
    std::vector<size_t> pivots;
    {
        std::vector<size_t> last;
        size_t pi = 0;
        for (int attempt = 0; attempt < 16 && pivots.empty(); ++attempt) {
            exactalg::ZpCtx ctx{nth_modular_prime(pi++)};
            uint64_t tau = kTaus[attempt % 8];
            exactalg::ZpMat M(nrows, ncols, &ctx);
            bool usable = true;
            for (size_t c = 0; c < ncols && usable; ++c)
                for (const auto& [r, f] : colent[c]) {
                    try {
                        M.at(r, c) = f.eval_mod(ctx, tau);
                    } catch (const MathError&) {
                        usable = false;
                        break;
                    }
                }
            if (!usable) continue;
            auto piv = exactalg::zp_rref_inplace(M, ncols);
            if (piv.size() != nrows) continue;
            if (!last.empty() && last == piv)
                pivots = piv;
            else
                last = std::move(piv);
        }
        if (pivots.empty())
            throw MathError("graded piece never attains full rank at sampled specializations");
    }

    long dbound = rhs_tdeg + 8;
    for (size_t c : pivots) dbound += col_tdeg[c];

    const int kMaxEscalations = 3;
    for (int esc = 0; esc <= kMaxEscalations; ++esc, dbound *= 2) {
        size_t want = 2 * static_cast<size_t>(dbound) + 9;
        std::vector<std::vector<std::vector<exactalg::ModularImage>>> images(
            nb, std::vector<std::vector<exactalg::ModularImage>>(nrows));
        std::vector<std::vector<RatFunc>> prev;
        bool have_prev = false;
        size_t pi = 0;
        int dead_primes = 0, failed_interps = 0;
        bool escalate = false;
        for (int round = 0; round < 200 && !escalate; ++round) {
            exactalg::ZpCtx ctx{nth_modular_prime(pi++)};
            std::vector<uint64_t> xs;
            xs.reserve(want);
            std::vector<std::vector<std::vector<uint64_t>>> ys(
                nb, std::vector<std::vector<uint64_t>>(nrows));
            uint64_t tau = 2;
            size_t attempts = 0;
            while (xs.size() < want && attempts < 4 * want + 64 && tau < ctx.p) {
                ++attempts;
                uint64_t point = tau++;
                exactalg::ZpMat M(nrows, nrows, &ctx);
                bool usable = true;
                for (size_t k = 0; k < nrows && usable; ++k)
                    for (const auto& [r, f] : colent[pivots[k]]) {
                        try {
                            M.at(r, k) = f.eval_mod(ctx, point);
                        } catch (const MathError&) {
                            usable = false;
                            break;
                        }
                    }
                if (!usable) continue;
                exactalg::ZpLU lu(M);
                if (lu.singular()) continue;
                std::vector<std::vector<uint64_t>> sols(nb);
                for (size_t b = 0; b < nb && usable; ++b) {
                    std::vector<uint64_t> rhs(nrows, 0);
                    for (const auto& [r, f] : rhsent[b]) {
                        try {
                            rhs[r] = f.eval_mod(ctx, point);
                        } catch (const MathError&) {
                            usable = false;
                            break;
                        }
                    }
                    if (usable) sols[b] = lu.solve(std::move(rhs));
                }
                if (!usable) continue;
                for (size_t b = 0; b < nb; ++b)
                    for (size_t k = 0; k < nrows; ++k) ys[b][k].push_back(sols[b][k]);
                xs.push_back(point);
            }
            if (xs.size() < want) {
                if (++dead_primes >= 3)
                    throw MathError("not enough usable sample points for the modular decomposition");
                continue;
            }
            dead_primes = 0;

            bool interp_ok = true;
            for (size_t b = 0; b < nb && interp_ok; ++b)
                for (size_t k = 0; k < nrows && interp_ok; ++k) {
                    auto ri = exactalg::zp_rational_interpolate(
                        xs, ys[b][k], static_cast<int>(dbound), static_cast<int>(dbound), &ctx);
                    if (!ri) {
                        interp_ok = false;
                        break;
                    }
                    images[b][k].push_back(
                        exactalg::ModularImage{ctx.p, ri->first.coeffs(), ri->second.coeffs()});
                }
            if (!interp_ok) {
                if (++failed_interps >= 2) escalate = true;
                continue;
            }
            failed_interps = 0;

            std::vector<std::vector<RatFunc>> cand(nb, std::vector<RatFunc>(nrows));
            bool complete = true;
            for (size_t b = 0; b < nb && complete; ++b)
                for (size_t k = 0; k < nrows; ++k) {
                    auto r = exactalg::reconstruct_ratfunc(images[b][k]);
                    if (!r) {
                        complete = false;
                        break;
                    }
                    cand[b][k] = std::move(*r);
                }
            if (!complete) continue;
            if (!have_prev || !(prev == cand)) {
                prev = std::move(cand);
                have_prev = true;
                continue;
            }

            // Stable across two primes: certify exactly and hand back.
            cofs.assign(nb, std::vector<RatFuncPoly>(nv, RatFuncPoly::zero(nv)));
            rems.assign(nb, RatFuncPoly::zero(nv));
            for (size_t b = 0; b < nb; ++b) {
                for (size_t k = 0; k < nrows; ++k) {
                    const RatFunc& val = prev[b][k];
                    if (exactalg::coeff_is_zero(val)) continue;
                    size_t c = pivots[k];
                    if (c < pc.columns.size()) {
                        auto [v, m] = pc.columns[c];
                        cofs[b][v] += RatFuncPoly::term(nv, m, val);
                    } else {
                        rems[b] += RatFuncPoly::term(nv, pc.complement[c - pc.columns.size()], val);
                    }
                }
            }
            bool verified = true;
            for (size_t b = 0; b < nb && verified; ++b)
                verified = decomposition_identity_holds(*inputs[b], cofs[b], rems[b], partials_);
            if (verified) return;
            escalate = true;
        }
        if (!escalate)
            throw MathError("modular decomposition did not stabilize within the prime budget");
    }
    throw MathError("modular decomposition failed after escalating its degree bound");
}

std::vector<ReducedClass> ReductionEngine::reduce_batch(const std::vector<ResidueForm>& forms) const {
    int nv = fam_.nvars();
    std::vector<ReducedClass> out(forms.size());
    struct State {
        RatFuncPoly a;
        int k = 0;
    };
    std::vector<State> st(forms.size());
    for (size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].pole_order < 1) throw UsageError("pole order must be at least 1");
        const RatFuncPoly& a = forms[i].numerator;
        if (!a.is_zero() &&
            (!a.is_homogeneous() || a.total_degree() != fam_.numerator_degree(forms[i].pole_order)))
            throw UsageError("numerator degree does not match the pole order");
        out[i].coords.assign(basis_.size(), RatFunc(0));
        st[i] = State{a, forms[i].pole_order};
    }

    while (true) {
        int level = 0;
        for (const auto& s : st)
            if (!s.a.is_zero() && s.k > level) level = s.k;
        if (level == 0) break;
        std::vector<size_t> idx;
        for (size_t i = 0; i < st.size(); ++i)
            if (st[i].k == level && !st[i].a.is_zero()) idx.push_back(i);
        if (level == 1) {
            // Below the generator degree of the Jacobian ideal nothing can be
            // absorbed, so the numerator is already in reduced position.
            for (size_t i : idx) {
                for (const auto& [m, c] : st[i].a.terms()) out[i].coords[basis_index(m, 1)] = c;
                st[i].a = RatFuncPoly::zero(nv);
            }
            continue;
        }
        std::vector<const RatFuncPoly*> inputs;
        inputs.reserve(idx.size());
        for (size_t i : idx) inputs.push_back(&st[i].a);
        std::vector<std::vector<RatFuncPoly>> cofs;
        std::vector<RatFuncPoly> rems;
        decompose_batch(inputs, fam_.numerator_degree(level), cofs, rems);
        for (size_t j = 0; j < idx.size(); ++j) {
            size_t i = idx[j];
            ReductionStep step;
            step.pole_order = level;
            step.input = st[i].a;
            step.cofactors = std::move(cofs[j]);
            step.remainder = std::move(rems[j]);
            if (level <= fam_.max_pole_order()) {
                for (const auto& [m, c] : step.remainder.terms())
                    out[i].coords[basis_index(m, level)] = c;
            } else if (!step.remainder.is_zero()) {
                throw MathError("remainder persists above the top pole order");
            }
            RatFuncPoly next = RatFuncPoly::zero(nv);
            for (int v = 0; v < nv; ++v) next += step.cofactors[v].derivative(v);
            next = next.scaled(RatFunc(mpq_class(1, level - 1)));
            out[i].certificate.push_back(std::move(step));
            st[i].a = std::move(next);
            st[i].k = level - 1;
        }
    }
    return out;
}

ReducedClass ReductionEngine::reduce(const ResidueForm& form) const {
    return reduce_batch({form}).front();
}

void ReductionEngine::verify_certificate(const ResidueForm& form, const ReducedClass& red) const {
    int nv = fam_.nvars();
    if (red.coords.size() != basis_.size()) throw MathError("certificate coordinate count mismatch");
    std::vector<RatFunc> expect(basis_.size(), RatFunc(0));

    if (form.pole_order == 1 || form.numerator.is_zero()) {
        if (!red.certificate.empty())
            throw MathError("certificate should be empty when no pole lowering happens");
        for (const auto& [m, c] : form.numerator.terms()) expect[basis_index(m, 1)] = c;
    } else {
        if (red.certificate.empty()) throw MathError("certificate is empty");
        if (!(red.certificate.front().input == form.numerator) ||
            red.certificate.front().pole_order != form.pole_order)
            throw MathError("certificate does not start at the given form");
    }

    for (size_t s = 0; s < red.certificate.size(); ++s) {
        const ReductionStep& st = red.certificate[s];
        int k = st.pole_order;
        if (k < 2 || st.cofactors.size() != static_cast<size_t>(nv))
            throw MathError("malformed certificate step");
        if (!decomposition_identity_holds(st.input, st.cofactors, st.remainder, partials_))
            throw MathError("certificate step identity fails");
        const auto& comp = complement(fam_.numerator_degree(k));
        for (const auto& [m, c] : st.remainder.terms()) {
            (void)c;
            if (std::find(comp.begin(), comp.end(), m) == comp.end())
                throw MathError("certificate remainder lies outside the complement");
        }
        if (k <= fam_.max_pole_order())
            for (const auto& [m, c] : st.remainder.terms()) expect[basis_index(m, k)] = c;
        RatFuncPoly next = RatFuncPoly::zero(nv);
        for (int v = 0; v < nv; ++v) next += st.cofactors[v].derivative(v);
        next = next.scaled(RatFunc(mpq_class(1, k - 1)));
        if (s + 1 < red.certificate.size()) {
            if (red.certificate[s + 1].pole_order != k - 1 || !(red.certificate[s + 1].input == next))
                throw MathError("certificate steps do not chain");
        } else if (k == 2) {
            for (const auto& [m, c] : next.terms()) expect[basis_index(m, 1)] = c;
        } else if (!next.is_zero()) {
            throw MathError("certificate ends before the descent terminates");
        }
    }
    for (size_t i = 0; i < expect.size(); ++i)
        if (!(expect[i] == red.coords[i])) throw MathError("certificate coordinates disagree");
}

PointReduction::PointReduction(const ReductionEngine& engine, const mpq_class& t0)
    : engine_(engine), t0_(t0) {
    poly0_ = exactalg::specialize_parameter(engine.family().poly, t0);
    if (poly0_.is_zero()) throw MathError("family vanishes at the base point");
    for (int v = 0; v < engine.family().nvars(); ++v) partials0_.push_back(poly0_.derivative(v));
}

std::vector<mpq_class> PointReduction::reduce(const QMultiPoly& numerator, int pole_order) const {
    const HypersurfaceFamily& fam = engine_.family();
    int nv = fam.nvars();
    if (pole_order < 1) throw UsageError("pole order must be at least 1");
    std::vector<mpq_class> coords(engine_.basis().size(), 0);

    QMultiPoly a = numerator;
    if (!a.is_zero() && (!a.is_homogeneous() || a.total_degree() != fam.numerator_degree(pole_order)))
        throw UsageError("numerator degree does not match the pole order");

    int k = pole_order;
    while (!a.is_zero() && k >= 1) {
        int deg = fam.numerator_degree(k);
        const auto& comp = engine_.complement(deg);
        std::vector<QMultiPoly> cof(nv, QMultiPoly::zero(nv));
        QMultiPoly rem = QMultiPoly::zero(nv);
        if (k == 1) {
            rem = a;
        } else {
            auto rows = exactalg::monomials_of_degree(nv, deg);
            std::map<uint64_t, size_t> row_of;
            for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r].packed()] = r;
            int mdeg = deg - (fam.degree_d - 1);
            std::vector<std::pair<int, Monomial>> cols;
            if (mdeg >= 0)
                for (int v = 0; v < nv; ++v)
                    for (const Monomial& m : exactalg::monomials_of_degree(nv, mdeg))
                        cols.emplace_back(v, m);
            exactalg::QMat M(rows.size(), cols.size() + comp.size());
            for (size_t c = 0; c < cols.size(); ++c) {
                auto [v, m] = cols[c];
                QMultiPoly gen = partials0_[v].times_term(m, mpq_class(1));
                for (const auto& [mm, cc] : gen.terms()) M.at(row_of.at(mm.packed()), c) = cc;
            }
            for (size_t j = 0; j < comp.size(); ++j)
                M.at(row_of.at(comp[j].packed()), cols.size() + j) = 1;
            std::vector<mpq_class> rhs(rows.size(), 0);
            for (const auto& [m, c] : a.terms()) {
                auto it = row_of.find(m.packed());
                if (it == row_of.end())
                    throw UsageError("numerator is not homogeneous of the declared degree");
                rhs[it->second] = c;
            }
            auto sol = exactalg::dixon_particular(M, rhs);
            if (!sol)
                throw MathError("fiber at the base point is singular or the generic complement stops spanning");
            for (size_t c = 0; c < cols.size(); ++c) {
                if ((*sol)[c] == 0) continue;
                auto [v, m] = cols[c];
                cof[v] += QMultiPoly::term(nv, m, (*sol)[c]);
            }
            for (size_t j = 0; j < comp.size(); ++j)
                if ((*sol)[cols.size() + j] != 0)
                    rem += QMultiPoly::term(nv, comp[j], (*sol)[cols.size() + j]);
        }
        if (k <= fam.max_pole_order()) {
            for (const auto& [m, c] : rem.terms()) coords[engine_.basis_index(m, k)] = c;
        } else if (!rem.is_zero()) {
            throw MathError("remainder persists above the top pole order");
        }
        QMultiPoly next = QMultiPoly::zero(nv);
        if (k > 1) {
            for (int v = 0; v < nv; ++v) next += cof[v].derivative(v);
            next = next.scaled(mpq_class(1, k - 1));
        }
        a = std::move(next);
        --k;
    }
    return coords;
}

}  // namespace heights::gd
