#pragma once

#include "exactalg/multipoly.hpp"
#include "exactalg/ratfunc.hpp"

namespace heights::exactalg {

// Polynomial in the geometric variables whose coefficients are rational
// functions of the deformation parameter. A family's defining equation lives
// here once the parameter has been split off from the textual form.
using RatFuncPoly = MultiPoly<RatFunc>;

// Splits a polynomial over vars + one trailing parameter letter into a
// parameter-free polynomial with rational-function coefficients.
inline RatFuncPoly split_parameter(const QMultiPoly& with_param) {
    int nv = with_param.nvars();
    if (nv < 2) throw UsageError("expected at least one geometric variable plus the parameter");
    int param = nv - 1;
    int nx = nv - 1;
    RatFuncPoly out = RatFuncPoly::zero(nx);
    std::map<Monomial, RatFunc, MonomialDegrevlexGreater> acc;
    for (const auto& [m, c] : with_param.terms()) {
        int e = m.exp(param, nv);
        Monomial mx = Monomial::one();
        for (int i = 0; i < nx; ++i) mx.set_exp(i, nx, m.exp(i, nv));
        RatFunc tc = RatFunc(c) * RatFunc(ZPoly::monomial(1, e), ZPoly::constant(1));
        auto it = acc.find(mx);
        if (it == acc.end())
            acc.emplace(mx, tc);
        else
            it->second += tc;
    }
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.mutable_terms().emplace_back(m, std::move(c));
    return out;
}

// Specializes the parameter to a rational value, producing a plain rational
// polynomial in the geometric variables.
inline QMultiPoly specialize_parameter(const RatFuncPoly& p, const mpq_class& t) {
    QMultiPoly out = QMultiPoly::zero(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        mpq_class v = c.eval_q(t);
        if (v != 0) out.mutable_terms().emplace_back(m, v);
    }
    return out;
}

}  // namespace heights::exactalg
