#pragma once

#include <string>
#include <vector>

#include "exactalg/matrix.hpp"
#include "griffiths_dwork/reduction.hpp"

namespace heights::gd {

// Derivative in the family parameter of A * Omega / F^k, written with the
// pole order raised by one: (A' F - k A F') / F^{k+1}.
ResidueForm parameter_derivative_form(const HypersurfaceFamily& fam, const ResidueForm& form);

// Connection matrix in the engine's basis: row j holds the coordinates of
// the parameter derivative of basis row j. A column y of basis periods along
// a fixed cycle then satisfies y' = A y.
exactalg::Mat<exactalg::RatFunc> connection_matrix(const ReductionEngine& engine);

// q_0 u + q_1 u' + ... + q_r u^(r) with integer polynomial coefficients,
// primitive as a vector, leading coefficient of q_r positive.
struct PicardFuchsOperator {
    std::vector<exactalg::ZPoly> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    bool operator==(const PicardFuchsOperator& o) const { return coeffs == o.coeffs; }
    bool operator!=(const PicardFuchsOperator& o) const { return !(*this == o); }
};

// Coordinate functionals of the successive derivatives of one basis period:
// c_0 = e_row and c_{j+1} = c_j' + A^T c_j, so that u^(j) = <c_j, y>.
std::vector<std::vector<exactalg::RatFunc>> coordinate_flow(
    const exactalg::Mat<exactalg::RatFunc>& conn, size_t row, int count);

// Minimal-order scalar annihilator of the chosen basis period, found as the
// first coordinate functional lying in the span of the earlier ones.
PicardFuchsOperator picard_fuchs(const exactalg::Mat<exactalg::RatFunc>& conn, size_t row);

// Stacked values c_j(t0), j = 0..count-1, as a count x dim matrix: applied
// to a vector of basis period values at t0 it yields the derivative jet of
// the scalar period. Fails when some functional has a pole at t0.
exactalg::QMat initial_jet_coefficients(const exactalg::Mat<exactalg::RatFunc>& conn, size_t row,
                                        int count, const mpq_class& t0);

// Bit-exact text round trip for caching.
std::string picard_fuchs_to_text(const PicardFuchsOperator& op);
PicardFuchsOperator picard_fuchs_from_text(const std::string& text);

}  // namespace heights::gd
