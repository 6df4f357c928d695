#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "exactalg/ratfunc.hpp"

namespace heights::exactalg {

// One modular image of a rational function of t: coefficients of the
// interpolated numerator and monic denominator modulo the prime.
struct ModularImage {
    uint64_t prime = 0;
    std::vector<uint64_t> num;
    std::vector<uint64_t> den;
};

// Lifts a rational function from its modular images: images at the consensus
// degree signature are combined by CRT and the coefficients reconstructed as
// rationals. Images of lower degree are dismissed as accidents of their
// prime. Returns nullopt while the combined modulus is still too small.
std::optional<RatFunc> reconstruct_ratfunc(const std::vector<ModularImage>& images);

}  // namespace heights::exactalg
