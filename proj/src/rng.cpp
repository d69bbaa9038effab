#include "vdclab/rng.hpp"

#include <cmath>
#include <numbers>

namespace vdclab {

std::uint64_t SeededRng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::uniform_below(std::uint64_t n) {
  // Rejection to kill modulo bias.
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double SeededRng::uniform_angle() { return 2.0 * std::numbers::pi * uniform01(); }

std::complex<double> SeededRng::uniform_unit() {
  const double th = uniform_angle();
  return {std::cos(th), std::sin(th)};
}

SeededRng SeededRng::substream(std::uint64_t id) const {
  return SeededRng(seed_, mix(stream_ ^ mix(id + 0x7fb5d329728ea185ULL)));
}

SeededRng SeededRng::substream(const LatticePoint& site, std::uint64_t salt) const {
  std::uint64_t id = mix(salt + 0x81dadef4bc2dd44dULL);
  for (int i = 0; i < kMaxDim; ++i) {
    id = mix(id ^ static_cast<std::uint64_t>(site.c[i] + (std::int64_t{1} << 32)));
  }
  return substream(id);
}

}  // namespace vdclab
