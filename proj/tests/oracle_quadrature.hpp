#pragma once

#include <vector>

#include "numerics/ball.hpp"

namespace heights::testoracle {

// Periods of monomial differentials on the Fermat quartic plane curve
// x^4 + y^4 + z^4 = 0 by direct numerical contour integration in the chart
// z = 1, independent of the closed-form evaluator in the library.
//
// Cycles are the signed twisted-arc unions (1 - g1)(1 - g2) g^a applied to
// the base arc
//   s in [0,1]  ->  (x, y) = (mu s^{1/4}, mu (1-s)^{1/4}),   mu = exp(i pi/4),
// where g_j multiplies coordinate j by i and a ranges over {0,1,2}^2.
//
// The differential x^e0 y^e1 z^e2 Omega / F^pole is integrated as the
// one-form res_y[A(x,y)/F(x,y)^pole] dx. For pole = 2 that representative
// has residue-free poles of order <= 4 at the y-ramification points, so the
// cycle is pushed off them: arcs stop at s = 1 - 2^-12 and the chain is
// closed by quarter circles of radius 2^-3 in y around each ramification
// point. Being of the second kind, the form gives the same period for every
// cycle in the homology class, which is what the closed form predicts.
//
// Returns the nine cell periods in lexicographic order of a (a1 slowest).
std::vector<numerics::Ball> quartic_row_periods_quadrature(const std::vector<long>& exps,
                                                           int pole, mpfr_prec_t prec);

}  // namespace heights::testoracle
