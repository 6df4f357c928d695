#include "numerics/serialize.hpp"

#include <sstream>

#include "support/errors.hpp"

namespace heights::numerics {

std::string serialize_ball(const Ball& b) {
    size_t digits = static_cast<size_t>(static_cast<double>(b.prec()) * 0.302) + 5;
    return real_to_decimal(b.mid_re(), digits, MPFR_RNDN) + " " +
           real_to_decimal(b.mid_im(), digits, MPFR_RNDN) + " +/- " +
           real_to_decimal(b.rad(), 4, MPFR_RNDU);
}

Ball parse_ball(const std::string& line, mpfr_prec_t prec) {
    std::istringstream in(line);
    std::string re, im, sep, rad;
    if (!(in >> re >> im >> sep >> rad) || sep != "+/-")
        throw IoError("malformed ball literal: " + line);
    Ball b(prec);
    if (mpfr_set_str(b.mutable_re().raw(), re.c_str(), 10, MPFR_RNDN) != 0)
        throw IoError("bad midpoint in ball literal: " + re);
    if (mpfr_set_str(b.mutable_im().raw(), im.c_str(), 10, MPFR_RNDN) != 0)
        throw IoError("bad midpoint in ball literal: " + im);
    Real r(kRadPrec);
    if (mpfr_set_str(r.raw(), rad.c_str(), 10, MPFR_RNDU) != 0)
        throw IoError("bad radius in ball literal: " + rad);
    if (mpfr_sgn(r.raw()) < 0) throw IoError("negative radius in ball literal");
    b.add_error(r);
    // The decimal text itself was a rounded rendering of the stored midpoint;
    // one ulp of each component at the parse precision covers both the print
    // and the re-read rounding when the digit count matches the precision.
    if (!b.mid_re().is_zero()) b.add_error_2exp(mpfr_get_exp(b.mid_re().raw()) - prec + 1);
    if (!b.mid_im().is_zero()) b.add_error_2exp(mpfr_get_exp(b.mid_im().raw()) - prec + 1);
    return b;
}

}  // namespace heights::numerics
