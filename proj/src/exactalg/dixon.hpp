#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "exactalg/matrix.hpp"

namespace heights::exactalg {

// p-adic lifting solver for exact rational linear algebra at sizes where
// fraction-tracking elimination bogs down. Answers are verified against the
// original system before being returned, so an unlucky prime can only cost
// time, never correctness.

// Square nonsingular solve of A x = y.
std::vector<mpq_class> dixon_solve(const QMat& A, const std::vector<mpq_class>& y);

// Kernel basis of an arbitrary rectangular A, each vector verified exactly.
std::vector<std::vector<mpq_class>> dixon_kernel(const QMat& A);

// Particular solution of a (possibly underdetermined) system A x = y with the
// non-pivot coordinates set to zero; pivot columns are the lexicographically
// first independent set, found modulo a prime and certified by the exact
// residual check. Returns nullopt when the system is inconsistent.
std::optional<std::vector<mpq_class>> dixon_particular(const QMat& A,
                                                       const std::vector<mpq_class>& y);

}  // namespace heights::exactalg
