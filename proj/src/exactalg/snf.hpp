#pragma once

#include <gmpxx.h>

#include <vector>

#include "exactalg/matrix.hpp"

namespace heights::exactalg {

using ZMat = std::vector<std::vector<mpz_class>>;

struct SmithResult {
    ZMat U;  // unimodular, rows() x rows()
    ZMat D;  // diagonal with d_1 | d_2 | ...
    ZMat V;  // unimodular, cols() x cols()
};

// U * M * V = D with nonnegative diagonal entries forming a divisibility
// chain. U and V are products of elementary unimodular operations.
SmithResult smith_normal_form(const ZMat& M);

ZMat zmat_mul(const ZMat& A, const ZMat& B);
ZMat zmat_identity(size_t n);
mpz_class zmat_det(const ZMat& A);
bool zmat_is_identity(const ZMat& A);

}  // namespace heights::exactalg
