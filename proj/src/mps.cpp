#include "vdclab/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vdclab/averaging.hpp"
#include "vdclab/errors.hpp"

namespace vdclab {

namespace {

constexpr double kWeightTol = 1e-12;

bool is_permutation(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (const auto i : p) {
    if (i >= p.size() || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace

FiniteMps::FiniteMps(std::vector<double> weights, std::vector<std::vector<std::size_t>> generators,
                     std::vector<Complex> observable, double bound)
    : weights_(std::move(weights)),
      generators_(std::move(generators)),
      observable_(std::move(observable)),
      bound_(bound) {
  const std::size_t n = weights_.size();
  if (n == 0) throw std::invalid_argument("finite system needs at least one state");
  if (observable_.size() != n) throw std::invalid_argument("observable size mismatch");
  if (generators_.empty() || generators_.size() > kMaxDim) {
    throw std::invalid_argument("finite system needs 1..3 generators");
  }
  double total = 0.0;
  for (const auto w : weights_) {
    if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    throw std::invalid_argument("weights must sum to 1 within 1e-12");
  }
  for (const auto& g : generators_) {
    if (g.size() != n || !is_permutation(g)) {
      throw std::invalid_argument("each generator must permute the states");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (weights_[g[i]] != weights_[i]) {
        throw std::invalid_argument("generators must preserve weights exactly");
      }
    }
    inverse_generators_.push_back(invert(g));
  }
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    for (std::size_t b = a + 1; b < generators_.size(); ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        if (generators_[a][generators_[b][i]] != generators_[b][generators_[a][i]]) {
          throw std::invalid_argument("generators must commute");
        }
      }
    }
  }
  for (const auto& f : observable_) {
    if (std::abs(f) > bound_ + kWeightTol) {
      throw std::invalid_argument("observable exceeds its stated bound");
    }
  }
}

std::size_t FiniteMps::apply(const LatticePoint& g, std::size_t state) const {
  if (g.dim != dim()) throw std::invalid_argument("shift dimension mismatch with system action");
  for (int axis = 0; axis < dim(); ++axis) {
    if (g.c[axis] == 0) continue;
    const auto& perm = g.c[axis] > 0 ? generators_[static_cast<std::size_t>(axis)]
                                     : inverse_generators_[static_cast<std::size_t>(axis)];
    // Walk the cycle through `state` once; large shifts reduce mod its length.
    std::size_t cycle_len = 1;
    std::size_t cur = perm[state];
    while (cur != state) {
      cur = perm[cur];
      ++cycle_len;
    }
    std::uint64_t steps = static_cast<std::uint64_t>(std::abs(g.c[axis])) % cycle_len;
    while (steps--) state = perm[state];
  }
  return state;
}

Complex FiniteMps::observe(const LatticePoint& g, std::size_t state) const {
  return observable_[apply(g, state)];
}

bool FiniteMps::indicator_observable() const {
  for (const auto& f : observable_) {
    if (std::abs(f) > kWeightTol && std::abs(f - Complex(1.0, 0.0)) > kWeightTol) return false;
  }
  return true;
}

FiniteMps FiniteMps::identity(int dim, std::vector<double> weights, std::vector<Complex> observable) {
  const std::size_t n = weights.size();
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  double bound = 1.0;
  for (const auto& f : observable) bound = std::max(bound, std::abs(f));
  return FiniteMps(std::move(weights), std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(dim), id),
                   std::move(observable), bound);
}

FiniteMps FiniteMps::cyclic_rotation(std::size_t q) {
  if (q == 0) throw std::invalid_argument("cyclic rotation needs q >= 1");
  std::vector<double> w(q, 1.0 / static_cast<double>(q));
  std::vector<std::size_t> rot(q);
  for (std::size_t i = 0; i < q; ++i) rot[i] = (i + 1) % q;
  std::vector<Complex> f(q, Complex(0.0, 0.0));
  f[0] = Complex(1.0, 0.0);
  return FiniteMps(std::move(w), {std::move(rot)}, std::move(f), 1.0);
}

FiniteMps FiniteMps::two_copy_real(const FiniteMps& m) {
  const std::size_t n = m.state_count();
  std::vector<double> w(2 * n);
  std::vector<Complex> f(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = m.weights()[i] / 2.0;
    w[n + i] = m.weights()[i] / 2.0;
    f[i] = Complex(m.observable()[i].real(), 0.0);
    f[n + i] = Complex(m.observable()[i].imag(), 0.0);
  }
  std::vector<std::vector<std::size_t>> gens;
  for (int axis = 0; axis < m.dim(); ++axis) {
    std::vector<std::size_t> g(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = m.generator(axis)[i];
      g[n + i] = n + m.generator(axis)[i];
    }
    gens.push_back(std::move(g));
  }
  return FiniteMps(std::move(w), std::move(gens), std::move(f), m.bound());
}

Complex mps_correlation(const FiniteMps& m, const CorrelationEntry& e) {
  e.validate();
  const int j = e.arity();
  std::vector<Complex> slot(static_cast<std::size_t>(j));
  Complex acc(0.0, 0.0);
  for (std::size_t x = 0; x < m.state_count(); ++x) {
    if (m.weights()[x] == 0.0) continue;
    for (int i = 0; i < j; ++i) {
      slot[static_cast<std::size_t>(i)] = m.observe(e.shifts[static_cast<std::size_t>(i)], x);
    }
    acc += m.weights()[x] * e.poly.eval(slot);
  }
  return acc;
}

FiniteMps product_mps(const FiniteMps& a, const FiniteMps& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("product systems must share dimension");
  const std::size_t na = a.state_count();
  const std::size_t nb = b.state_count();
  std::vector<double> w(na * nb);
  std::vector<Complex> f(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      w[i * nb + j] = a.weights()[i] * b.weights()[j];
      f[i * nb + j] = a.observable()[i] * b.observable()[j];
    }
  }
  // Product weights can pick up rounding; renormalize the tail atom.
  double total = 0.0;
  for (const auto x : w) total += x;
  if (total > 0.0) {
    for (auto& x : w) x /= total;
  }
  std::vector<std::vector<std::size_t>> gens;
  for (int axis = 0; axis < a.dim(); ++axis) {
    std::vector<std::size_t> g(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        g[i * nb + j] = a.generator(axis)[i] * nb + b.generator(axis)[j];
      }
    }
    gens.push_back(std::move(g));
  }
  FiniteMps out(std::move(w), std::move(gens), std::move(f), a.bound() * b.bound());
  return out;
}

std::int64_t WitnessBundle::total_count() const {
  std::int64_t total = 0;
  for (const auto m : multiplicity) total += m;
  return total;
}

const LatticeBox& WitnessBundle::region() const {
  if (sequences.empty()) throw std::invalid_argument("empty witness bundle has no region");
  return sequences.front().region();
}

void WitnessBundle::validate() const {
  if (sequences.size() != multiplicity.size()) {
    throw std::invalid_argument("witness bundle multiplicities must match sequences");
  }
  for (const auto& s : sequences) {
    if (!(s.region() == region())) throw std::invalid_argument("witness sequences must share a region");
    if (!(s.domain() == domain)) throw std::invalid_argument("witness sequences must share the domain tag");
  }
  for (const auto m : multiplicity) {
    if (m < 1) throw std::invalid_argument("witness multiplicities must be >= 1");
  }
}

namespace {

// Largest-remainder integer apportionment of weights at denominator q.
std::vector<std::int64_t> apportion(const std::vector<double>& weights, std::int64_t q) {
  const std::size_t n = weights.size();
  std::vector<std::int64_t> r(n);
  std::vector<std::pair<double, std::size_t>> rema(n);
  std::int64_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = weights[i] * static_cast<double>(q);
    r[i] = static_cast<std::int64_t>(std::floor(exact));
    used += r[i];
    rema[i] = {exact - std::floor(exact), i};
  }
  std::sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::int64_t k = 0; k < q - used; ++k) {
    ++r[rema[static_cast<std::size_t>(k) % rema.size()].second];
  }
  return r;
}

double apportion_error(const std::vector<double>& weights, const std::vector<std::int64_t>& r,
                       std::int64_t q) {
  double e = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    e += std::abs(weights[i] - static_cast<double>(r[i]) / static_cast<double>(q));
  }
  return e;
}

}  // namespace

WitnessBundle finitistic_witnesses(const FiniteMps& m, const CorrelationSpec& spec,
                                   const LatticeBox& a_region, double delta,
                                   std::int64_t q_cap) {
  if (delta <= 0.0) throw std::invalid_argument("witness tolerance must be positive");
  spec.validate();
  if (a_region.dim != m.dim()) throw std::invalid_argument("witness region dimension mismatch");

  // Region that must carry values: union of h + A over all shifts, plus A.
  LatticeBox region = a_region;
  for (const auto& e : spec.entries) region = region.hull(e.needed_region(a_region));

  // Rationalize weights so averaging over K equal-weight sequences matches
  // the weighted integral within budget. Statistic error <= L1 error * sup.
  const double sup = spec.max_sup_bound();
  const double budget = delta / (2.0 * sup);
  std::int64_t q_chosen = 0;
  std::vector<std::int64_t> counts;
  for (std::int64_t q = static_cast<std::int64_t>(m.state_count()); q <= q_cap; ++q) {
    auto r = apportion(m.weights(), q);
    if (apportion_error(m.weights(), r, q) <= budget) {
      q_chosen = q;
      counts = std::move(r);
      break;
    }
  }
  if (q_chosen == 0) {
    throw RationalizationError("weights cannot be rationalized within delta/(2*sup) at denominator <= " +
                               std::to_string(q_cap));
  }

  WitnessBundle bundle;
  bundle.domain = spec.domain;
  bundle.provenance = "finite system, " + std::to_string(m.state_count()) + " states, denominator " +
                      std::to_string(q_chosen);
  for (std::size_t x = 0; x < m.state_count(); ++x) {
    if (counts[x] == 0) continue;
    SequenceWindow w(region, spec.domain, spec.domain.representative());
    for (std::int64_t idx = 0; idx < region.volume(); ++idx) {
      const LatticePoint a = region.point_at(static_cast<std::size_t>(idx));
      w.set(a, m.observe(a, x));
    }
    w.validate_domain();
    bundle.sequences.push_back(std::move(w));
    bundle.multiplicity.push_back(counts[x]);
  }
  bundle.validate();
  return bundle;
}

double witness_discrepancy(const WitnessBundle& bundle, const CorrelationSpec& spec,
                           const LatticeBox& a_region) {
  bundle.validate();
  const FiniteLatticeSet a = FiniteLatticeSet::from_box(a_region);
  const double total = static_cast<double>(bundle.total_count());
  double worst = 0.0;
  for (const auto& e : spec.entries) {
    if (!e.target) throw std::invalid_argument("witness_discrepancy needs entry targets");
    Complex stat(0.0, 0.0);
    for (std::size_t k = 0; k < bundle.sequences.size(); ++k) {
      stat += (static_cast<double>(bundle.multiplicity[k]) / total) *
              cesaro_correlation(bundle.sequences[k], e, a);
    }
    worst = std::max(worst, std::abs(stat - *e.target));
  }
  return worst;
}

}  // namespace vdclab
