#pragma once

#include <map>
#include <vector>

#include "exactalg/matrix.hpp"
#include "exactalg/ratfuncpoly.hpp"
#include "griffiths_dwork/family.hpp"

namespace heights::gd {

// Meromorphic top form A * Omega / F^k up to the Euler form factor.
struct ResidueForm {
    exactalg::RatFuncPoly numerator;
    int pole_order = 1;
};

// One pole-order-lowering step: input = sum_i cofactors[i] * dF/dx_i +
// remainder, with the remainder supported on the monomial complement.
struct ReductionStep {
    int pole_order = 0;
    exactalg::RatFuncPoly input;
    std::vector<exactalg::RatFuncPoly> cofactors;
    exactalg::RatFuncPoly remainder;
};

struct ReducedClass {
    std::vector<exactalg::RatFunc> coords;
    std::vector<ReductionStep> certificate;
};

struct BasisElement {
    exactalg::Monomial monomial;
    int pole_order = 1;
};

// Pole-order reduction in the Jacobian-ring presentation of middle
// cohomology. The monomial complement in each graded degree is the set of
// standard monomials of the degrevlex Groebner basis of the specialized
// partials. Two exact decomposition backends cover different sizes: dense
// linear algebra over the rational-function field for small graded pieces,
// and for large ones a modular search (canonical-pivot solutions sampled mod
// many primes and parameter values, then rational-function interpolation)
// whose result is certified by one exact polynomial identity check.
class ReductionEngine {
  public:
    enum class Backend { kDense, kModular };

    explicit ReductionEngine(HypersurfaceFamily fam);
    ReductionEngine(HypersurfaceFamily fam, Backend backend);

    const HypersurfaceFamily& family() const { return fam_; }
    Backend backend() const { return backend_; }
    const std::vector<exactalg::RatFuncPoly>& partials() const { return partials_; }

    // Basis of middle cohomology: pole order ascending, monomials ascending
    // degrevlex within each order.
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::vector<ResidueForm> basis_forms() const;
    size_t basis_index(const exactalg::Monomial& m, int pole_order) const;
    const std::vector<exactalg::Monomial>& complement(int degree) const;

    // Rows spanning the top filtration block (pole order up to (n+1)/2).
    size_t filtration_block_rows() const;

    ReducedClass reduce(const ResidueForm& form) const;
    // Forms sharing one pole order descend in lockstep so that expensive
    // graded pieces are factored and sampled once for the whole batch.
    std::vector<ReducedClass> reduce_batch(const std::vector<ResidueForm>& forms) const;

    // Re-checks a reduction certificate by exact polynomial arithmetic.
    void verify_certificate(const ResidueForm& form, const ReducedClass& red) const;

  private:
    struct DegreePiece {
        std::vector<exactalg::Monomial> row_monomials;           // descending degrevlex
        std::vector<std::pair<int, exactalg::Monomial>> columns; // (variable, multiplier)
        std::vector<exactalg::Monomial> complement;              // ascending degrevlex
    };

    void init();
    void init_complements();
    const DegreePiece& piece(int degree) const;
    // inputs[b] = sum_i cofs[b][i] dF_i + rems[b], rems supported on the complement
    void decompose_batch(const std::vector<const exactalg::RatFuncPoly*>& inputs, int degree,
                         std::vector<std::vector<exactalg::RatFuncPoly>>& cofs,
                         std::vector<exactalg::RatFuncPoly>& rems) const;
    void decompose_dense(const std::vector<const exactalg::RatFuncPoly*>& inputs, int degree,
                         std::vector<std::vector<exactalg::RatFuncPoly>>& cofs,
                         std::vector<exactalg::RatFuncPoly>& rems) const;
    void decompose_modular(const std::vector<const exactalg::RatFuncPoly*>& inputs, int degree,
                           std::vector<std::vector<exactalg::RatFuncPoly>>& cofs,
                           std::vector<exactalg::RatFuncPoly>& rems) const;

    HypersurfaceFamily fam_;
    Backend backend_;
    std::vector<exactalg::RatFuncPoly> partials_;
    std::map<int, std::vector<exactalg::Monomial>> complements_;
    std::vector<BasisElement> basis_;
    mutable std::map<int, DegreePiece> pieces_;
};

// Checks input = sum_i cofactors[i] * partials[i] + remainder exactly,
// clearing all rational-function denominators first so the comparison runs
// in integer polynomial arithmetic.
bool decomposition_identity_holds(const exactalg::RatFuncPoly& input,
                                  const std::vector<exactalg::RatFuncPoly>& cofactors,
                                  const exactalg::RatFuncPoly& remainder,
                                  const std::vector<exactalg::RatFuncPoly>& partials);

// Exact reduction at a fixed rational parameter value, reusing the generic
// engine's monomial complement so coordinates stay comparable. Fails with a
// math error when the special fiber is singular (the solve is inconsistent)
// or the generic complement stops spanning there.
class PointReduction {
  public:
    PointReduction(const ReductionEngine& engine, const mpq_class& t0);

    const mpq_class& base_point() const { return t0_; }
    // Coordinates of A * Omega / F_{t0}^k in the engine's basis.
    std::vector<mpq_class> reduce(const exactalg::QMultiPoly& numerator, int pole_order) const;

  private:
    const ReductionEngine& engine_;
    mpq_class t0_;
    exactalg::QMultiPoly poly0_;
    std::vector<exactalg::QMultiPoly> partials0_;
};

// Coefficient of u^degree in ((1 - u^{d-1})/(1 - u))^{nvars}: the expected
// complement dimension in each graded degree.
mpz_class jacobian_ring_dimension(int nvars, int d, int degree);

}  // namespace heights::gd
