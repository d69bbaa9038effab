#pragma once

#include <cstdint>
#include <vector>

#include "vdclab/lattice.hpp"
#include "vdclab/mps.hpp"
#include "vdclab/rng.hpp"
#include "vdclab/window.hpp"

namespace vdclab {

// One draw from the circle density z -> 1 + Re(z conj(w)) relative to the
// uniform measure (rejection with constant envelope 1 + |w|). Moments:
// E z = w/2 and E z^n = 0 for |n| >= 2.
Complex sample_biased_circle(Complex w, SeededRng& rng);

struct LiftResult {
  WitnessBundle bundle;
  int replicas = 0;           // M: copies per input sequence (J = K * M)
  double worst_power_stat = 0.0;
  double mean_error = 0.0;    // |mean - input_mean / 2|
};

inline constexpr int kLiftReplicaCap = 10000;

// Lifts disc-valued witnesses to circle-valued ones: each replica draws
// every site from the biased circle density centered at the input value.
// Grows M until all power-l cross-correlations over `shifts` (1 <= l <= L)
// fall below delta and the mean lands within delta of (input mean)/2.
// ConvergenceError if the replica cap is hit first.
LiftResult lift_witnesses_to_circle(const WitnessBundle& input, const LatticeBox& a_region,
                                    const std::vector<LatticePoint>& shifts, int l_max,
                                    double delta, SeededRng& rng);

// Per-site independent draw from a convex representation over the finite set
// D whose mean is the site's value. GeometryError if a value lies outside
// conv(D) beyond 1e-9.
SequenceWindow convexify_window(const SequenceWindow& w, const std::vector<Complex>& d,
                                SeededRng& rng);

// Convex weights lambda >= 0, sum 1, sum lambda_i d_i = z. Closed form for
// |D| <= 3, minimal-support LP solution otherwise.
std::vector<double> convex_representation(Complex z, const std::vector<Complex>& d);

// iid uniform unimodular values over the region, one stream per site.
SequenceWindow white_noise_window(const LatticeBox& region, const SeededRng& rng);

}  // namespace vdclab
