#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vdclab/averaging.hpp"
#include "vdclab/lattice.hpp"
#include "vdclab/mps.hpp"
#include "vdclab/rng.hpp"
#include "vdclab/tiling.hpp"
#include "vdclab/window.hpp"

namespace vdclab {

// Supplies condition-3 witnesses and correlation targets.
class WitnessSource {
 public:
  virtual ~WitnessSource() = default;
  virtual WitnessBundle witnesses(const CorrelationSpec& spec, const LatticeBox& a_region,
                                  double delta, SeededRng& rng) const = 0;
  virtual Complex target(const CorrelationEntry& e) const = 0;
  virtual std::string describe() const = 0;
};

class MpsWitnessSource final : public WitnessSource {
 public:
  explicit MpsWitnessSource(FiniteMps m) : m_(std::move(m)) {}
  const FiniteMps& system() const { return m_; }
  WitnessBundle witnesses(const CorrelationSpec& spec, const LatticeBox& a_region, double delta,
                          SeededRng& rng) const override;
  Complex target(const CorrelationEntry& e) const override;
  std::string describe() const override;

 private:
  FiniteMps m_;
};

// Bernoulli product source over {0,1}: correlations follow the product
// formula, witnesses are Monte Carlo blocks grown until they meet delta.
class IidBernoulliSource final : public WitnessSource {
 public:
  explicit IidBernoulliSource(double p);
  double p() const { return p_; }
  WitnessBundle witnesses(const CorrelationSpec& spec, const LatticeBox& a_region, double delta,
                          SeededRng& rng) const override;
  Complex target(const CorrelationEntry& e) const override;
  std::string describe() const override;

 private:
  double p_ = 0.5;
};

struct SynthesisLevel {
  int k = 0;               // dyadic exponent of the block side
  int inner_k = 0;         // dyadic exponent of the witness tiles inside a block
  double delta = 0.0;      // target block discrepancy
  double achieved = 0.0;   // measured block discrepancy (periodic statistic)
};

struct SynthesisSchedule {
  double epsilon = 0.05;
  std::vector<SynthesisLevel> levels;
  std::optional<Complex> fill;
};

SynthesisSchedule default_synthesis_schedule(const CorrelationSpec& spec, std::int64_t horizon,
                                             double epsilon = 0.05);

struct TraceRow {
  std::int64_t n = 0;
  std::size_t entry = 0;
  Complex value;
  Complex target;
  double abs_err = 0.0;
};

struct SynthesisResult {
  SequenceWindow window;       // covers the horizon box plus shift margins
  LatticeBox horizon_region;   // [0, horizon)^d
  CorrelationSpec spec;        // entries with resolved targets
  std::vector<SynthesisLevel> levels;
  std::vector<std::size_t> tiles_per_level;
  std::vector<TraceRow> trace;       // per dyadic N, per entry
  double final_max_err = 0.0;        // max over entries at N = horizon
  double composed_bound = 0.0;       // 4*(eps/5) + eps/10 + eps/10
  bool passed = false;
};

// Builds a window over [0, horizon)^d whose Cesaro correlations along the
// anchored boxes approach each entry's target: per-level blocks mix the
// witnesses in weight proportion over an inner dyadic tiling, and the blocks
// are laid out by the congruent-partition schedule. Missing entry targets
// are filled from the source. horizon must be a power of two.
SynthesisResult synthesize_sequence(const CorrelationSpec& spec, const WitnessSource& source,
                                    std::int64_t horizon, SeededRng rng,
                                    const SynthesisSchedule* schedule = nullptr);

struct ShiftFamily {
  std::vector<ShiftTerm> terms;
  bool is_union = false;

  std::string describe() const;
};

struct IfcFamilyRow {
  std::string family;
  double measured = 0.0;
  double target = 0.0;
  double abs_err = 0.0;
};

struct IfcResult {
  FiniteLatticeSet a;
  LatticeBox universe;          // region carrying the synthesized indicator
  FiniteLatticeSet f_final;     // the Folner set densities were taken along
  std::vector<IfcFamilyRow> rows;
  SynthesisResult synthesis;
  double worst_err = 0.0;
};

// Inverse correspondence: builds A inside [0, horizon)^d whose densities
// d(cap_i (A - h_i)^{eps_i}) match mu(cap_i (T_{h_i} B)^{eps_i}); union
// families are matched through their complement intersections. The system's
// observable must be {0,1}-valued.
IfcResult inverse_furstenberg(const FiniteMps& m, const std::vector<ShiftFamily>& families,
                              std::int64_t horizon, SeededRng rng, double epsilon = 0.05);
IfcResult inverse_furstenberg_iid(double p, const std::vector<ShiftFamily>& families,
                                  std::int64_t horizon, SeededRng rng, double epsilon = 0.05);

// N-restriction of the Z case: A is intersected with {1, 2, ...} and the
// densities are reported along F_N = {1..N} (N = horizon - 1 so every
// shifted membership query stays covered).
IfcResult semigroup_ifc(const FiniteMps& m, const std::vector<ShiftFamily>& families,
                        std::int64_t horizon, SeededRng rng, double epsilon = 0.05);

}  // namespace vdclab
