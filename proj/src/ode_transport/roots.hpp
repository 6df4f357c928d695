#pragma once

#include <vector>

#include "exactalg/unipoly.hpp"
#include "numerics/ball.hpp"

namespace heights::ode_transport {

// Isolating balls for the distinct complex roots of p: pairwise disjoint,
// each certified (interval Newton) to contain exactly one root of the
// square-free part of p, and together they cover every root. Multiplicities
// are dropped. Balls are sorted by midpoint, real part first.
//
// Throws MathError when isolation cannot be certified at the given
// precision; doubling the precision is the intended retry.
std::vector<numerics::Ball> isolate_roots(const exactalg::ZPoly& p, mpfr_prec_t prec);

}  // namespace heights::ode_transport
