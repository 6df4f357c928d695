#pragma once

#include <gmpxx.h>

#include <vector>

#include "exactalg/snf.hpp"

namespace heights::exactalg {

// Full-rank sublattice of Z^ambient given by independent basis rows.
struct IntLattice {
    ZMat basis;
    size_t ambient = 0;
};

// Lovász-condition lattice reduction with parameter 0.99 and exact rational
// Gram-Schmidt bookkeeping. Throws on dependent rows.
ZMat lll_reduce(const ZMat& basis);

}  // namespace heights::exactalg
