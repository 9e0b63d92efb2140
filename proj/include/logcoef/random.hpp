#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace logcoef {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index). Work items that own an index get
/// the same stream no matter which worker runs them.
inline Rng stream_for(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6c6f6763u};
  return Rng(seq);
}

/// Uniform point in the closed disk |z| <= radius.
template <class URBG>
std::complex<double> uniform_disk(URBG& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  return std::polar(r, 2.0 * std::numbers::pi * unit(rng));
}

}  // namespace logcoef
