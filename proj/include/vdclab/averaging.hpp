#pragma once

#include <cstdint>
#include <vector>

#include "vdclab/lattice.hpp"
#include "vdclab/window.hpp"

namespace vdclab {

// (1/|F|) sum_{g in F} p(z_{h_1+g}, ..., z_{h_j+g}).
// Throws CoverageError if the window misses any needed point.
Complex cesaro_correlation(const SequenceWindow& w, const CorrelationEntry& e,
                           const FiniteLatticeSet& f);

// Plain Cesaro mean of the window over F.
Complex cesaro_mean(const SequenceWindow& w, const FiniteLatticeSet& f);

struct WeylReport {
  bool pass = false;
  int worst_l = 0;
  double worst_value = 0.0;
  double tol = 0.0;
  std::vector<double> values;  // |avg z^l| for l = 1..L_max
};

// Weyl test: pass iff |(1/|F|) sum z_g^l| <= tol for every 1 <= l <= L_max.
// Requires a circle-tagged window (DomainError otherwise).
WeylReport weyl_ud_test(const SequenceWindow& w, int l_max, const FiniteLatticeSet& f, double tol);

struct ShiftTerm {
  LatticePoint shift;
  bool keep = true;  // false selects the complement within the universe
};

// |F ∩ ∩_i (A - h_i)^{eps_i}| / |F|, complements taken within `universe`.
// Throws CoverageError if some g + h_i falls outside the universe.
double set_density(const FiniteLatticeSet& a, const LatticeBox& universe,
                   const std::vector<ShiftTerm>& shifts, const FiniteLatticeSet& f);

// Same but with the union over i instead of the intersection.
double set_density_union(const FiniteLatticeSet& a, const LatticeBox& universe,
                         const std::vector<ShiftTerm>& shifts, const FiniteLatticeSet& f);

// Best subwindow density: max over boxes B of side L inside `window` of
// |A ∩ B| / |B|. Finite stand-in for the sup over Folner sequences.
double banach_density_estimate(const FiniteLatticeSet& a, const LatticeBox& window, std::int64_t l);

// Finite proxy for limsup: min over prefix cuts t = 0..truncation of
// max_{i >= t} values[i]. Requires truncation < values.size().
double limsup_over_h(const std::vector<double>& values, std::size_t truncation);

}  // namespace vdclab
