#pragma once

#include <gmpxx.h>

#include <vector>

#include "griffiths_dwork/connection.hpp"
#include "numerics/linalg.hpp"
#include "ode_transport/roots.hpp"

namespace heights::ode_transport {

// Exact point of the parameter plane. Paths are planned and stepped through
// these so every geometric clearance check is a rational comparison.
struct GaussianRational {
    mpq_class re, im;
    GaussianRational() : re(0), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    bool operator==(const GaussianRational&) const = default;
};

struct SingularitySet {
    // Isolating balls for the roots of the leading coefficient.
    std::vector<numerics::Ball> points;
    // Exact flag: the leading coefficient vanishes at t = 0.
    bool zero_singular = false;
    // Infinity is not an ordinary point (degree criterion).
    bool infinity_singular = false;
};

SingularitySet singularities(const gd::PicardFuchsOperator& op, mpfr_prec_t prec = 192);

// Piecewise-linear route. Segments keep at least `clearance` away from every
// singularity; when the requested target is a singular t = 0 the final
// waypoint is instead a positive rational matching point inside the local
// series' disk of convergence.
struct PathPlan {
    std::vector<GaussianRational> waypoints;
    mpq_class clearance;
};

// Plans from `from` to `to` around the given singularities. A zero clearance
// requests the default: 1/8 of the least pairwise distance among the
// singularities and the two endpoints. Detours bulge to the +i side of the
// blocked segment first and are deterministic for fixed inputs.
PathPlan plan_path(const GaussianRational& from, const GaussianRational& to,
                   const SingularitySet& sing, const mpq_class& clearance = mpq_class(0));

// Maps the derivative jet (u, u', ..., u^(r-1)) at `from` to the jet at `to`.
struct TransitionMatrix {
    GaussianRational from, to;
    numerics::BallMat map;
};

// Single-segment analytic continuation by repeated Taylor steps, each step at
// most half the distance to the nearest singularity. The segment must stay
// strictly away from all singularities.
TransitionMatrix taylor_transition(const gd::PicardFuchsOperator& op, const GaussianRational& a,
                                   const GaussianRational& b, mpfr_prec_t prec);

// Composition of taylor_transition over consecutive plan waypoints.
TransitionMatrix transport_along(const gd::PicardFuchsOperator& op, const PathPlan& plan,
                                 mpfr_prec_t prec);

}  // namespace heights::ode_transport
