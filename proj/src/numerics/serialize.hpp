#pragma once

#include <string>

#include "numerics/ball.hpp"

namespace heights::numerics {

// One ball per line as `mid_re mid_im +/- rad`, decimal scientific notation,
// with enough digits to reproduce the midpoint at the stated precision. The
// radius is printed rounded up.
std::string serialize_ball(const Ball& b);

// Inverse of serialize_ball at the given precision; the parsed radius is
// widened by the representation error of both midpoint components.
Ball parse_ball(const std::string& line, mpfr_prec_t prec);

}  // namespace heights::numerics
