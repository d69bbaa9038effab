#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdclab/lattice.hpp"
#include "vdclab/window.hpp"

namespace vdclab {

// Finite probability space with d commuting measure-preserving bijections
// (the generators of a Z^d action) and a bounded observable.
class FiniteMps {
 public:
  FiniteMps(std::vector<double> weights, std::vector<std::vector<std::size_t>> generators,
            std::vector<Complex> observable, double bound);

  std::size_t state_count() const { return weights_.size(); }
  int dim() const { return static_cast<int>(generators_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Complex>& observable() const { return observable_; }
  double bound() const { return bound_; }
  const std::vector<std::size_t>& generator(int axis) const { return generators_[static_cast<std::size_t>(axis)]; }

  // T_g x for g in Z^d (negative coordinates use the inverse permutation).
  std::size_t apply(const LatticePoint& g, std::size_t state) const;
  // f(T_g x).
  Complex observe(const LatticePoint& g, std::size_t state) const;

  bool indicator_observable() const;

  // Identity action on weighted atoms.
  static FiniteMps identity(int dim, std::vector<double> weights, std::vector<Complex> observable);
  // Z acting on Z_q by rotation +1; observable = indicator of state 0.
  static FiniteMps cyclic_rotation(std::size_t q);
  // Real/imaginary duplication: states X x {0,1}, same action on the first
  // factor, observable F(x, i) = (i == 0 ? Re f(x) : Im f(x)).
  static FiniteMps two_copy_real(const FiniteMps& m);

 private:
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> generators_;
  std::vector<std::vector<std::size_t>> inverse_generators_;
  std::vector<Complex> observable_;
  double bound_ = 1.0;
};

// sum_x w(x) p(f(T_{h_1} x), ..., f(T_{h_j} x)).
Complex mps_correlation(const FiniteMps& m, const CorrelationEntry& e);

// Product system: product weights, diagonal action, product observable.
// Correlations of single-monomial product entries factorize.
FiniteMps product_mps(const FiniteMps& a, const FiniteMps& b);

// K sequences over a common region, with optional replication counts
// (sequence k stands for multiplicity[k] of the K_total = sum multiplicities
// equal-weight sequences of the finitistic criterion).
struct WitnessBundle {
  std::vector<SequenceWindow> sequences;
  std::vector<std::int64_t> multiplicity;
  ValueDomain domain;
  std::string provenance;

  std::int64_t total_count() const;
  std::size_t distinct_count() const { return sequences.size(); }
  const LatticeBox& region() const;
  void validate() const;
};

// Condition-3 witnesses for a finite system: every state is replicated in
// proportion to its weight (largest-remainder rationalization at denominator
// <= q_cap), and sequence k reads z_{a,k} = f(T_a x_k) on the region needed
// by the spec over A. The per-entry discrepancy against mps_correlation is
// the rationalization error alone; it must stay below delta.
WitnessBundle finitistic_witnesses(const FiniteMps& m, const CorrelationSpec& spec,
                                   const LatticeBox& a_region, double delta,
                                   std::int64_t q_cap = 10000);

// max_l | gamma(l) - (1/(K|A|)) sum_k sum_{g in A} p_l(...) | for the bundle,
// with gamma taken from the entries' targets.
double witness_discrepancy(const WitnessBundle& bundle, const CorrelationSpec& spec,
                           const LatticeBox& a_region);

}  // namespace vdclab
