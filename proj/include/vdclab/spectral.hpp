#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vdclab/lattice.hpp"
#include "vdclab/window.hpp"

namespace vdclab {

// Discretized probability measure on T^d: atoms at the grid points j/M.
struct GridMeasure {
  int dim = 1;
  int resolution = 1;
  std::vector<double> weights;  // row-major over the M^d grid

  static GridMeasure dirac_origin(int dim, int resolution);
  static GridMeasure uniform(int dim, int resolution);

  std::size_t grid_size() const;
  std::size_t index_of(const std::array<int, 3>& j) const;
  void validate() const;  // weights nonnegative, sum 1 within 1e-10
};

// mu_hat(h) = sum_j w_j exp(+2 pi i h.j / M).
Complex grid_fourier(const GridMeasure& mu, const LatticePoint& h);

struct PrimalAtomResult {
  double value = 0.0;  // max mass at the origin atom
  GridMeasure measure;
  std::size_t lp_iterations = 0;
};

// Maximize mu({0}) over grid measures with mu_hat(h) = 0 for all h in h0.
// AliasError if some h is congruent to 0 mod M; SolverError from the LP.
PrimalAtomResult primal_atom_lp(const std::vector<LatticePoint>& h0, int resolution, int dim = 1);

struct CosineCertificate {
  std::vector<LatticePoint> support;  // H0 as used (reduced mod M)
  std::vector<double> a;              // cosine coefficients
  std::vector<double> b;              // sine coefficients
  double eps = 0.0;                   // min over the grid of T >= -eps
  int resolution = 0;
  double dual_value = 0.0;            // LP dual optimum (equals primal value)

  // T(x) = sum_h a_h cos(2 pi h.x) + b_h sin(2 pi h.x).
  double eval(const std::vector<double>& x) const;
};

// LP dual of primal_atom_lp, normalized so T(0) = 1 and min_grid T >= -eps
// with eps = v / (1 - v) for primal optimum v. Requires nonempty H0.
CosineCertificate dual_cosine_certificate(const std::vector<LatticePoint>& h0, int resolution,
                                          int dim = 1);

struct CharacterDecay {
  double value = 0.0;  // |(1/|F_N|) sum_{g in F_N} e^{2 pi i x.g}|
  double bound = 0.0;  // product over axes of min(1, 1/(side*|sin pi x_i|))
};

CharacterDecay character_average_decay(const std::vector<double>& x, const FolnerPlan& plan,
                                       std::int64_t n);

struct EvidenceStep {
  std::size_t h0_size = 0;
  int resolution = 0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
};

enum class Verdict { VdcEvidence, NonVdcEvidence, Inconclusive };

std::string verdict_name(Verdict v);

struct EvidenceReport {
  std::string h_description;
  std::vector<EvidenceStep> steps;
  Verdict verdict = Verdict::Inconclusive;
  double threshold = 0.05;
  double floor = 0.0;  // smallest optimum seen
};

// Runs primal+dual along a schedule of H0 truncations and grid resolutions.
// h_sequence enumerates H; h0_schedule gives prefix sizes, m_schedule the
// grid resolution per step (same length).
EvidenceReport vdc_evidence(const std::vector<LatticePoint>& h_sequence,
                            const std::vector<std::size_t>& h0_schedule,
                            const std::vector<int>& m_schedule, const std::string& description,
                            double threshold = 0.05, int dim = 1);

}  // namespace vdclab
