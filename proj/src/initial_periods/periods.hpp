#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "exactalg/snf.hpp"
#include "numerics/ball.hpp"
#include "numerics/linalg.hpp"

namespace heights::initial_periods {

using exactalg::ZMat;

// Periods of one smooth fiber. Rows follow the pole-order basis of primitive
// middle cohomology, columns an integer homology basis whose intersection
// matrix is known exactly.
struct InitialPeriodData {
    long degree = 0;
    long dimension = 0;  // fiber dimension n
    mpq_class t0 = 0;
    ZMat intersection;
    numerics::BallMat periods;
    mpfr_prec_t prec_bits = 0;

    // k with matrix size 2k + 2.
    long weight_index() const { return static_cast<long>(periods.rows()) / 2 - 1; }
};

// Twisted-cell homology scaffold of a Fermat hypersurface. Cells are indexed
// by tuples a in {0..d-2}^{n+1}, lexicographic with the first coordinate
// slowest. The skew pairing on the cell module has a radical; basis_cells
// names a subset of cells descending to a unimodular basis of the quotient,
// chosen as the lexicographically first subset whose restricted pairing has
// determinant of absolute value one.
struct FermatCellLattice {
    long degree = 0;
    long dimension = 0;
    std::vector<std::vector<long>> cells;
    ZMat cell_pairing;
    std::vector<size_t> basis_cells;
    ZMat basis_pairing;
};

FermatCellLattice fermat_cell_lattice(long degree, long dimension);

// Closed-form period of x^m Omega / F^pole over one twisted cell: a product
// of Gamma values at rationals in (0, 3), a power of exp(i pi / d), a
// rational factor from lowering the pole order, and the root-of-unity
// character of the cell. exps lists all n+2 projective exponents; the last
// variable is the affine chart.
numerics::Ball fermat_cell_period(long degree, long dimension, const std::vector<long>& exps,
                                  int pole, const std::vector<long>& cell, mpfr_prec_t prec);

// Validated period data for the Fermat hypersurface. Supported cases:
// (degree, dimension) = (4, 1) and (3, 3). The sign of the intersection
// matrix is pinned by Hodge-Riemann definiteness of the pole-filtration
// block, and the bilinear vanishing pattern is certified in ball arithmetic
// before returning.
InitialPeriodData fermat_periods(long degree, long dimension, mpfr_prec_t prec);

// Plain-text round trip: header lines, integer intersection rows, then one
// serialized ball per period entry in row-major order.
std::string export_period_data(const InitialPeriodData& data);
InitialPeriodData import_period_data_text(const std::string& text);
InitialPeriodData import_period_data(const std::string& path);

}  // namespace heights::initial_periods
