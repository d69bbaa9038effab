#include "vdclab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vdclab/errors.hpp"
#include "vdclab/simplex.hpp"

namespace vdclab {

namespace {

constexpr double kWeightSumTol = 1e-10;

void check_resolution(int m) {
  if (m < 1) throw std::invalid_argument("grid resolution must be >= 1");
}

std::int64_t mod_positive(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// Reduce h mod M componentwise; AliasError if the result is the zero vector.
LatticePoint reduce_mod(const LatticePoint& h, int m) {
  LatticePoint r = LatticePoint::zero(h.dim);
  bool zero = true;
  for (int i = 0; i < h.dim; ++i) {
    r.c[i] = mod_positive(h.c[i], m);
    if (r.c[i] != 0) zero = false;
  }
  if (zero) {
    throw AliasError("frequency " + h.to_string() + " aliases to 0 at resolution " + std::to_string(m));
  }
  return r;
}

}  // namespace

GridMeasure GridMeasure::dirac_origin(int dim, int resolution) {
  check_resolution(resolution);
  GridMeasure mu;
  mu.dim = dim;
  mu.resolution = resolution;
  mu.weights.assign(mu.grid_size(), 0.0);
  mu.weights[0] = 1.0;
  return mu;
}

GridMeasure GridMeasure::uniform(int dim, int resolution) {
  check_resolution(resolution);
  GridMeasure mu;
  mu.dim = dim;
  mu.resolution = resolution;
  mu.weights.assign(mu.grid_size(), 1.0 / static_cast<double>(mu.grid_size() ? mu.grid_size() : 1));
  return mu;
}

std::size_t GridMeasure::grid_size() const {
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(resolution);
  return n;
}

std::size_t GridMeasure::index_of(const std::array<int, 3>& j) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim; ++i) {
    idx = idx * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(j[static_cast<std::size_t>(i)]);
  }
  return idx;
}

void GridMeasure::validate() const {
  if (weights.size() != grid_size()) throw std::invalid_argument("grid measure weight count mismatch");
  double total = 0.0;
  for (const auto w : weights) {
    if (w < -kWeightSumTol) throw std::invalid_argument("grid measure weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("grid measure weights must sum to 1 within 1e-10");
  }
}

Complex grid_fourier(const GridMeasure& mu, const LatticePoint& h) {
  if (h.dim != mu.dim) throw std::invalid_argument("frequency dimension mismatch");
  const int m = mu.resolution;
  // Depends on h only through h mod M: use integer phases.
  std::array<std::int64_t, 3> hm{0, 0, 0};
  for (int i = 0; i < mu.dim; ++i) hm[static_cast<std::size_t>(i)] = mod_positive(h.c[i], m);
  Complex acc(0.0, 0.0);
  std::array<int, 3> j{0, 0, 0};
  const std::size_t n = mu.grid_size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (int i = mu.dim - 1; i >= 0; --i) {
      j[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(m));
      rest /= static_cast<std::size_t>(m);
    }
    std::int64_t phase = 0;
    for (int i = 0; i < mu.dim; ++i) {
      phase += hm[static_cast<std::size_t>(i)] * j[static_cast<std::size_t>(i)];
    }
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(mod_positive(phase, m)) / m;
    acc += mu.weights[idx] * Complex(std::cos(theta), std::sin(theta));
  }
  return acc;
}

namespace {

// Canonical reduced frequency list: mod M, deduplicated, one of {h, M-h}.
std::vector<LatticePoint> canonical_frequencies(const std::vector<LatticePoint>& h0, int m, int dim) {
  std::vector<LatticePoint> reduced;
  for (const auto& h : h0) {
    if (h.dim != dim) throw std::invalid_argument("frequency dimension mismatch");
    LatticePoint r = reduce_mod(h, m);
    LatticePoint neg = LatticePoint::zero(dim);
    for (int i = 0; i < dim; ++i) neg.c[i] = mod_positive(-r.c[i], m);
    if (neg < r) r = neg;
    reduced.push_back(r);
  }
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  return reduced;
}

LinearProgram build_atom_lp(const std::vector<LatticePoint>& freqs, int m, int dim) {
  GridMeasure probe = GridMeasure::uniform(dim, m);
  const std::size_t n = probe.grid_size();
  LinearProgram lp;
  lp.rows = 1 + 2 * freqs.size();
  lp.cols = n;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  lp.c.assign(lp.cols, 0.0);
  lp.c[0] = -1.0;  // maximize the origin atom
  for (std::size_t j = 0; j < n; ++j) lp.at(0, j) = 1.0;
  lp.b[0] = 1.0;
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t rest = j;
      for (int i = dim - 1; i >= 0; --i) {
        idx[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(m));
        rest /= static_cast<std::size_t>(m);
      }
      std::int64_t phase = 0;
      for (int i = 0; i < dim; ++i) {
        phase += freqs[f].c[i] * idx[static_cast<std::size_t>(i)];
      }
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(mod_positive(phase, m)) / m;
      lp.at(1 + 2 * f, j) = std::cos(theta);
      lp.at(2 + 2 * f, j) = std::sin(theta);
    }
  }
  return lp;
}

}  // namespace

PrimalAtomResult primal_atom_lp(const std::vector<LatticePoint>& h0, int resolution, int dim) {
  check_resolution(resolution);
  const auto freqs = canonical_frequencies(h0, resolution, dim);
  const LinearProgram lp = build_atom_lp(freqs, resolution, dim);
  const LpSolution sol = solve_lp(lp);
  if (!sol.feasible) {
    throw SolverError("atom LP infeasible (the uniform grid measure should always be feasible)");
  }
  PrimalAtomResult out;
  out.value = -sol.value;
  out.measure.dim = dim;
  out.measure.resolution = resolution;
  out.measure.weights = sol.x;
  for (auto& w : out.measure.weights) w = std::max(w, 0.0);
  out.lp_iterations = sol.iterations;
  return out;
}

double CosineCertificate::eval(const std::vector<double>& x) const {
  double v = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    double dot = 0.0;
    for (int ax = 0; ax < support[i].dim; ++ax) {
      dot += static_cast<double>(support[i].c[ax]) * x[static_cast<std::size_t>(ax)];
    }
    v += a[i] * std::cos(2.0 * std::numbers::pi * dot) + b[i] * std::sin(2.0 * std::numbers::pi * dot);
  }
  return v;
}

CosineCertificate dual_cosine_certificate(const std::vector<LatticePoint>& h0, int resolution,
                                          int dim) {
  check_resolution(resolution);
  const auto freqs = canonical_frequencies(h0, resolution, dim);
  if (freqs.empty()) throw std::invalid_argument("dual certificate needs a nonempty frequency set");
  const LinearProgram lp = build_atom_lp(freqs, resolution, dim);
  const LpSolution sol = solve_lp(lp);
  if (!sol.feasible) throw SolverError("atom LP infeasible");
  const double v = -sol.value;
  if (1.0 - v <= 1e-9) throw SolverError("degenerate certificate: primal optimum at 1");

  CosineCertificate cert;
  cert.support = freqs;
  cert.resolution = resolution;
  cert.dual_value = -sol.y[0];  // dual objective b.y with b = e_0-ish: y_0 = -v
  cert.eps = v / (1.0 - v);
  cert.a.resize(freqs.size());
  cert.b.resize(freqs.size());
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    cert.a[f] = -sol.y[1 + 2 * f] / (1.0 - v);
    cert.b[f] = -sol.y[2 + 2 * f] / (1.0 - v);
  }
  return cert;
}

CharacterDecay character_average_decay(const std::vector<double>& x, const FolnerPlan& plan,
                                       std::int64_t n) {
  if (static_cast<int>(x.size()) != plan.dim) {
    throw std::invalid_argument("character point dimension mismatch");
  }
  const LatticeBox f = folner_box_region(plan, n);
  CharacterDecay out;
  out.value = 1.0;
  out.bound = 1.0;
  // The box average factorizes over axes; translation only rotates the sum.
  for (int ax = 0; ax < plan.dim; ++ax) {
    const double s = static_cast<double>(f.side(ax));
    const double sinx = std::abs(std::sin(std::numbers::pi * x[static_cast<std::size_t>(ax)]));
    double axis_value;
    if (sinx < 1e-15) {
      axis_value = 1.0;
    } else {
      axis_value = std::abs(std::sin(std::numbers::pi * x[static_cast<std::size_t>(ax)] * s)) / (s * sinx);
    }
    out.value *= axis_value;
    out.bound *= sinx < 1e-15 ? 1.0 : std::min(1.0, 1.0 / (s * sinx));
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::VdcEvidence:
      return "vdC-evidence";
    case Verdict::NonVdcEvidence:
      return "non-vdC-evidence";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

EvidenceReport vdc_evidence(const std::vector<LatticePoint>& h_sequence,
                            const std::vector<std::size_t>& h0_schedule,
                            const std::vector<int>& m_schedule, const std::string& description,
                            double threshold, int dim) {
  if (h0_schedule.empty() || h0_schedule.size() != m_schedule.size()) {
    throw std::invalid_argument("evidence schedules must be nonempty and of equal length");
  }
  for (std::size_t i = 1; i < h0_schedule.size(); ++i) {
    if (h0_schedule[i] < h0_schedule[i - 1] || m_schedule[i] < m_schedule[i - 1]) {
      throw std::invalid_argument("evidence schedules must be nondecreasing");
    }
  }
  EvidenceReport report;
  report.h_description = description;
  report.threshold = threshold;
  report.floor = 1.0;
  for (std::size_t s = 0; s < h0_schedule.size(); ++s) {
    const std::size_t take = std::min(h0_schedule[s], h_sequence.size());
    std::vector<LatticePoint> h0(h_sequence.begin(),
                                 h_sequence.begin() + static_cast<std::ptrdiff_t>(take));
    EvidenceStep step;
    step.h0_size = take;
    step.resolution = m_schedule[s];
    const auto primal = primal_atom_lp(h0, m_schedule[s], dim);
    step.primal_value = primal.value;
    const auto cert = dual_cosine_certificate(h0, m_schedule[s], dim);
    step.dual_value = cert.dual_value;
    step.gap = std::abs(step.primal_value - step.dual_value);
    report.floor = std::min(report.floor, step.primal_value);
    report.steps.push_back(step);
  }

  // Decision rule: optima that sink below the threshold and keep sinking are
  // vdC evidence; a positive floor the tail has stabilized on is non-vdC
  // evidence; anything else stays inconclusive.
  const double last = report.steps.back().primal_value;
  bool strictly_decreasing_tail = report.steps.size() >= 2;
  for (std::size_t s = report.steps.size() >= 4 ? report.steps.size() - 4 : 0;
       s + 1 < report.steps.size(); ++s) {
    if (report.steps[s + 1].primal_value >= report.steps[s].primal_value - 1e-12) {
      strictly_decreasing_tail = false;
    }
  }
  bool stable_tail = report.steps.size() >= 2;
  if (stable_tail) {
    const double prev = report.steps[report.steps.size() - 2].primal_value;
    stable_tail = prev - last <= 1e-9 + 0.002 * prev;
  }
  if (last <= threshold && strictly_decreasing_tail) {
    report.verdict = Verdict::VdcEvidence;
  } else if (report.floor > threshold && stable_tail) {
    report.verdict = Verdict::NonVdcEvidence;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

}  // namespace vdclab
