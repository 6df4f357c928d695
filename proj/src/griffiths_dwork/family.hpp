#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactalg/ratfuncpoly.hpp"

namespace heights::gd {

// One-parameter family of projective hypersurfaces V(F_t) in P^{n+1},
// F_t homogeneous of degree d in the geometric variables with coefficients
// rational in the parameter.
struct HypersurfaceFamily {
    std::vector<std::string> var_names;
    std::string param = "t";
    exactalg::RatFuncPoly poly;
    int dim_n = 0;
    int degree_d = 0;
    std::optional<std::vector<mpq_class>> node;

    int nvars() const { return dim_n + 2; }
    // Degree of a pole-order-k residue numerator.
    int numerator_degree(int k) const { return k * degree_d - (dim_n + 2); }
    // Largest pole order carrying middle cohomology.
    int max_pole_order() const { return dim_n + 1; }

    exactalg::RatFuncPoly partial(int var) const { return poly.derivative(var); }
    exactalg::RatFuncPoly parameter_derivative() const;

    bool depends_on_parameter() const;
    void validate() const;
    std::string canonical_text() const;
    std::string content_hash() const;
};

// Plain-text family description: `vars:`, `param:`, `poly:`, `degree:`,
// `dim:` lines, optionally `node:` with a comma list of rationals. Comments
// start with '#'.
HypersurfaceFamily parse_family_text(const std::string& text);
HypersurfaceFamily load_family_file(const std::string& path);

}  // namespace heights::gd
