#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "vdclab/lattice.hpp"

namespace vdclab {

// Reproducible stream-splittable generator. The engine is std::mt19937_64,
// whose output sequence is pinned by the standard, and all conversions to
// doubles are spelled out here, so identical (seed, stream) give identical
// draws on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64();
  // Uniform in [0, 1), 53-bit resolution.
  double uniform01();
  // Uniform in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);
  // Uniform angle in [0, 2*pi).
  double uniform_angle();
  // Uniform point of the unit circle.
  std::complex<double> uniform_unit();

  // Independent child stream; used to give each lattice site / tile its own
  // deterministic stream so parallel schedules cannot change the output.
  SeededRng substream(std::uint64_t id) const;
  SeededRng substream(const LatticePoint& site, std::uint64_t salt = 0) const;

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace vdclab
