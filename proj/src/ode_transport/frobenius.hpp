#pragma once

#include <gmpxx.h>

#include <vector>

#include "griffiths_dwork/connection.hpp"
#include "numerics/linalg.hpp"
#include "numerics/series.hpp"

namespace heights::ode_transport {

// One local solution at t = 0: value = t^exponent * series(t), where row n
// of the series multiplies t^n and may carry powers of log t. The exact
// rational coefficients that produced the ball series are kept alongside;
// they satisfy the operator identically through the retained order.
struct FrobeniusSolution {
    long exponent = 0;
    int log_power = 0;  // log power of the leading term
    numerics::LogSeries series;
    std::vector<std::vector<mpq_class>> exact;
};

struct FrobeniusBasis {
    // Echelonized: solution j opens with exactly t^{e_j} log(t)^{m_j}, the
    // (e_j, m_j) pairs are distinct and sorted, and the coefficients of the
    // other solutions' leading slots vanish.
    std::vector<FrobeniusSolution> solutions;
    long order = 0;            // retained t-orders per solution
    mpq_class safety_radius;   // distance to the nearest other singularity; 0 = unbounded
    mpfr_prec_t prec = 0;
};

// Local solution basis at t = 0, which must be a regular singular (or
// ordinary) point with all local exponents integers; otherwise MathError
// ("unsupported exponents at 0").
FrobeniusBasis frobenius_basis(const gd::PicardFuchsOperator& op, long order, mpfr_prec_t prec);

// r x r matrix whose column j is the derivative jet (u_j, u_j', ...,
// u_j^{(r-1)}) of basis solution j at the positive rational t.
numerics::BallMat frobenius_jet_matrix(const FrobeniusBasis& basis, const mpq_class& t);

// Coordinates c with  solution = sum_j c_j basis_j  for the solution whose
// derivative jet at t is given.
std::vector<numerics::Ball> match_at_endpoint(const FrobeniusBasis& basis, const mpq_class& t,
                                              const std::vector<numerics::Ball>& jet);

}  // namespace heights::ode_transport
