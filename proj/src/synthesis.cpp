#include "vdclab/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vdclab/errors.hpp"

namespace vdclab {

namespace {

int log2_exact(std::int64_t n) {
  int e = 0;
  while ((std::int64_t{1} << e) < n) ++e;
  return (std::int64_t{1} << e) == n ? e : -1;
}

int spec_dimension(const CorrelationSpec& spec) {
  if (spec.entries.empty()) throw std::invalid_argument("spec needs at least one entry");
  const int dim = spec.entries.front().shifts.front().dim;
  for (const auto& e : spec.entries) {
    for (const auto& h : e.shifts) {
      if (h.dim != dim) throw std::invalid_argument("spec entries must share a dimension");
    }
  }
  return dim;
}

// Deterministic proportional assignment of `count` slots to the weighted
// witnesses (quota method; equal weights degrade to round-robin).
std::vector<std::size_t> quota_assignment(const std::vector<double>& weights, std::size_t count) {
  std::vector<double> assigned(weights.size(), 0.0);
  std::vector<std::size_t> out(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t best = 0;
    double best_deficit = -1.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const double deficit = weights[k] * static_cast<double>(t + 1) - assigned[k];
      if (deficit > best_deficit + 1e-15) {
        best_deficit = deficit;
        best = k;
      }
    }
    out[t] = best;
    assigned[best] += 1.0;
  }
  return out;
}

std::vector<LatticePoint> inner_tile_centers(int k, int inner_k, int dim) {
  const std::int64_t per_axis = std::int64_t{1} << (k - inner_k);
  std::vector<LatticePoint> centers;
  std::array<std::int64_t, 3> idx{0, 0, 0};
  std::int64_t total = 1;
  for (int i = 0; i < dim; ++i) total *= per_axis;
  for (std::int64_t t = 0; t < total; ++t) {
    std::int64_t rest = t;
    for (int i = dim - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = rest % per_axis;
      rest /= per_axis;
    }
    LatticePoint c = LatticePoint::zero(dim);
    for (int i = 0; i < dim; ++i) c.c[i] = idx[static_cast<std::size_t>(i)] << inner_k;
    centers.push_back(c);
  }
  return centers;
}

SequenceWindow build_block(int k, int inner_k, const WitnessBundle& bundle,
                           const ValueDomain& domain, Complex fill) {
  const int dim = bundle.region().dim;
  SequenceWindow block(LatticeBox::cube(dim, 0, std::int64_t{1} << k), domain, fill);
  const auto centers = inner_tile_centers(k, inner_k, dim);
  std::vector<double> weights(bundle.sequences.size());
  const double total = static_cast<double>(bundle.total_count());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = static_cast<double>(bundle.multiplicity[i]) / total;
  }
  const auto assignment = quota_assignment(weights, centers.size());
  const LatticeBox core = LatticeBox::cube(dim, 0, std::int64_t{1} << inner_k);
  for (std::size_t t = 0; t < centers.size(); ++t) {
    const SequenceWindow& witness = bundle.sequences[assignment[t]];
    for (std::int64_t idx = 0; idx < core.volume(); ++idx) {
      const LatticePoint u = core.point_at(static_cast<std::size_t>(idx));
      block.set(centers[t] + u, witness.at_checked(u));
    }
  }
  return block;
}

// Block statistic with wrap-around shifts: matches the assembled sequence in
// the bulk, where neighbouring tiles carry the same block.
Complex block_statistic_periodic(const SequenceWindow& block, const CorrelationEntry& e) {
  const LatticeBox& r = block.region();
  const int dim = r.dim;
  const int j = e.arity();
  std::vector<Complex> slot(static_cast<std::size_t>(j));
  std::vector<Complex> summands;
  summands.reserve(static_cast<std::size_t>(r.volume()));
  for (std::int64_t idx = 0; idx < r.volume(); ++idx) {
    const LatticePoint g = r.point_at(static_cast<std::size_t>(idx));
    for (int i = 0; i < j; ++i) {
      LatticePoint q = g + e.shifts[static_cast<std::size_t>(i)];
      for (int ax = 0; ax < dim; ++ax) {
        const std::int64_t s = r.side(ax);
        std::int64_t v = (q.c[ax] - r.lo[ax]) % s;
        if (v < 0) v += s;
        q.c[ax] = r.lo[ax] + v;
      }
      slot[static_cast<std::size_t>(i)] = block.at(q);
    }
    summands.push_back(e.poly.eval(slot));
  }
  return pairwise_sum(summands) / static_cast<double>(r.volume());
}

double block_discrepancy(const SequenceWindow& block, const CorrelationSpec& spec) {
  double worst = 0.0;
  for (const auto& e : spec.entries) {
    worst = std::max(worst, std::abs(block_statistic_periodic(block, e) - *e.target));
  }
  return worst;
}

}  // namespace

WitnessBundle MpsWitnessSource::witnesses(const CorrelationSpec& spec, const LatticeBox& a_region,
                                          double delta, SeededRng&) const {
  return finitistic_witnesses(m_, spec, a_region, delta);
}

Complex MpsWitnessSource::target(const CorrelationEntry& e) const { return mps_correlation(m_, e); }

std::string MpsWitnessSource::describe() const {
  return "finite system with " + std::to_string(m_.state_count()) + " states";
}

IidBernoulliSource::IidBernoulliSource(double p) : p_(p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("Bernoulli parameter must lie in [0,1]");
}

Complex IidBernoulliSource::target(const CorrelationEntry& e) const {
  // E prod_i z_{h_i}^{a_i + b_i} with iid {0,1} sites: each distinct shift
  // with a positive exponent contributes one factor of p.
  Complex acc(0.0, 0.0);
  for (const auto& term : e.poly.terms) {
    std::set<LatticePoint> touched;
    for (std::size_t i = 0; i < term.exponents.size(); ++i) {
      const auto [a, b] = term.exponents[i];
      if (a + b > 0) touched.insert(e.shifts[i]);
    }
    double factor = 1.0;
    for (std::size_t i = 0; i < touched.size(); ++i) factor *= p_;
    acc += term.coeff * factor;
  }
  return acc;
}

WitnessBundle IidBernoulliSource::witnesses(const CorrelationSpec& spec, const LatticeBox& a_region,
                                            double delta, SeededRng& rng) const {
  LatticeBox region = a_region;
  for (const auto& e : spec.entries) region = region.hull(e.needed_region(a_region));
  const double volume = static_cast<double>(a_region.volume());
  const std::int64_t cap = std::max<std::int64_t>(8, (std::int64_t{1} << 21) / std::max<std::int64_t>(region.volume(), 1));

  WitnessBundle bundle;
  bundle.domain = spec.domain;
  bundle.provenance = "iid Bernoulli(p=" + std::to_string(p_) + ") blocks";
  const double want = 1.2 / (delta * delta * volume);
  std::int64_t k = want >= static_cast<double>(cap)
                       ? cap
                       : std::max<std::int64_t>(4, static_cast<std::int64_t>(std::ceil(want)));
  std::uint64_t salt = 0;
  for (;;) {
    while (static_cast<std::int64_t>(bundle.sequences.size()) < k) {
      SequenceWindow w(region, spec.domain, Complex(0.0, 0.0));
      const std::uint64_t s = SeededRng::mix(0x69696464ULL + salt++);
      for (std::int64_t idx = 0; idx < region.volume(); ++idx) {
        const LatticePoint g = region.point_at(static_cast<std::size_t>(idx));
        SeededRng site = rng.substream(g, s);
        w.set(g, site.uniform01() < p_ ? Complex(1.0, 0.0) : Complex(0.0, 0.0));
      }
      bundle.sequences.push_back(std::move(w));
      bundle.multiplicity.push_back(1);
    }
    if (witness_discrepancy(bundle, spec, a_region) <= delta) return bundle;
    if (k >= cap) {
      throw WitnessError("Bernoulli witnesses cannot meet delta within the replication cap");
    }
    k = std::min<std::int64_t>(cap, 2 * k);
  }
}

std::string IidBernoulliSource::describe() const {
  return "iid Bernoulli(p=" + std::to_string(p_) + ")";
}

SynthesisSchedule default_synthesis_schedule(const CorrelationSpec& spec, std::int64_t horizon,
                                             double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("schedule epsilon must be positive");
  const int e = log2_exact(horizon);
  if (e < 4) throw ScheduleError("horizon must be a power of two, at least 16");
  const int dim = spec_dimension(spec);
  const double m = spec.max_sup_bound();
  const double diam = static_cast<double>(std::max<std::int64_t>(spec.shift_diameter(), 1));

  SynthesisSchedule schedule;
  schedule.epsilon = epsilon;
  const double delta_block = epsilon / 10.0;
  int k1 = static_cast<int>(std::ceil(std::log2(std::max(2.0, 64.0 * dim * diam * m / epsilon))));
  k1 = std::clamp(k1, 2, e - 2);
  // At most six levels; the top block side stays a quarter of the horizon.
  k1 = std::max(k1, e - 2 - 5);
  for (int k = k1; k <= e - 2; ++k) {
    schedule.levels.push_back(SynthesisLevel{k, 0, delta_block, 0.0});
  }
  return schedule;
}

SynthesisResult synthesize_sequence(const CorrelationSpec& spec_in, const WitnessSource& source,
                                    std::int64_t horizon, SeededRng rng,
                                    const SynthesisSchedule* schedule_in) {
  CorrelationSpec spec = spec_in;
  spec.validate();
  const int dim = spec_dimension(spec);
  for (auto& e : spec.entries) {
    if (!e.target) e.target = source.target(e);
  }

  const int e_horizon = log2_exact(horizon);
  if (e_horizon < 4) throw ScheduleError("horizon must be a power of two, at least 16");

  SynthesisSchedule schedule =
      schedule_in ? *schedule_in : default_synthesis_schedule(spec, horizon, 0.05);
  if (schedule.levels.empty()) throw ScheduleError("synthesis schedule has no levels");
  for (std::size_t i = 0; i < schedule.levels.size(); ++i) {
    if (schedule.levels[i].k < 1 || schedule.levels[i].k > e_horizon) {
      throw ScheduleError("synthesis level does not fit the horizon");
    }
    if (i && schedule.levels[i].k <= schedule.levels[i - 1].k) {
      throw ScheduleError("synthesis levels must be strictly increasing");
    }
  }
  const double epsilon = schedule.epsilon;
  const Complex fill = schedule.fill.value_or(spec.domain.representative());

  double min_delta = schedule.levels.front().delta;
  for (const auto& level : schedule.levels) min_delta = std::min(min_delta, level.delta);
  const double witness_delta = std::max(min_delta / 5.0, 1e-9);

  // Witness bundles are shared across levels with the same inner tiling.
  std::map<int, WitnessBundle> witness_cache;
  const auto witnesses_for = [&](int inner_k) -> const WitnessBundle& {
    auto it = witness_cache.find(inner_k);
    if (it == witness_cache.end()) {
      SeededRng sub = rng.substream(0x77697400ULL + static_cast<std::uint64_t>(inner_k));
      const LatticeBox a_region = LatticeBox::cube(dim, 0, std::int64_t{1} << inner_k);
      it = witness_cache.emplace(inner_k, source.witnesses(spec, a_region, witness_delta, sub)).first;
    }
    return it->second;
  };

  // Build one block per level: choose the inner tiling that measures best
  // (ties go to the coarser tiling, which has the fewest seams).
  std::vector<SequenceWindow> blocks;
  SynthesisResult result;
  result.levels = schedule.levels;
  for (auto& level : result.levels) {
    SequenceWindow best_block;
    double best = -1.0;
    int best_inner = -1;
    for (int inner = level.k - 1; inner >= std::max(2, level.k - 6); --inner) {
      const WitnessBundle& bundle = witnesses_for(inner);
      SequenceWindow candidate = build_block(level.k, inner, bundle, spec.domain, fill);
      const double score = block_discrepancy(candidate, spec);
      if (best < 0.0 || score < best - 1e-15) {
        best = score;
        best_inner = inner;
        best_block = std::move(candidate);
      }
    }
    if (best_inner < 0) throw ScheduleError("synthesis level too small for any inner tiling");
    if (best > epsilon / 2.0) {
      std::ostringstream os;
      os << "block at level side 2^" << level.k << " misses its target by " << best
         << " (witnesses cannot meet the schedule)";
      throw WitnessError(os.str());
    }
    level.inner_k = best_inner;
    level.achieved = best;
    blocks.push_back(std::move(best_block));
  }

  // Lay the blocks out along the congruent partition of the horizon window.
  std::vector<int> level_ks;
  for (const auto& level : result.levels) level_ks.push_back(level.k);
  const CongruentFamily family = CongruentFamily::dyadic(dim, level_ks);
  const FolnerPlan plan = FolnerPlan::boxes(dim, BoxStyle::Anchored);
  const TilePartition partition = congruent_partition(family, plan, horizon);
  result.tiles_per_level = partition.per_level_count;

  result.horizon_region = LatticeBox::cube(dim, 0, horizon);
  LatticeBox extended = result.horizon_region;
  for (const auto& e : spec.entries) extended = extended.hull(e.needed_region(result.horizon_region));
  result.window = assemble_blocks(
      partition, [&](const TileRef& tile) -> const SequenceWindow& { return blocks[tile.level_index]; },
      fill, spec.domain, extended);
  result.window.validate_domain(1e-9);

  // Verification pass along dyadic Folner boxes.
  result.spec = spec;
  for (int j = 2; j <= e_horizon; ++j) {
    const FiniteLatticeSet f = FiniteLatticeSet::from_box(LatticeBox::cube(dim, 0, std::int64_t{1} << j));
    for (std::size_t l = 0; l < spec.entries.size(); ++l) {
      TraceRow row;
      row.n = std::int64_t{1} << j;
      row.entry = l;
      row.value = cesaro_correlation(result.window, spec.entries[l], f);
      row.target = *spec.entries[l].target;
      row.abs_err = std::abs(row.value - row.target);
      result.trace.push_back(row);
      if (row.n == horizon) result.final_max_err = std::max(result.final_max_err, row.abs_err);
    }
  }
  result.composed_bound = 4.0 * (epsilon / 5.0) + epsilon / 10.0 + epsilon / 10.0;
  result.passed = result.final_max_err <= result.composed_bound;
  return result;
}

std::string ShiftFamily::describe() const {
  std::ostringstream os;
  os << (is_union ? "union{" : "inter{");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << ",";
    if (!terms[i].keep) os << "~";
    os << terms[i].shift.to_string();
  }
  os << "}";
  return os.str();
}

namespace {

CorrelationEntry family_entry(const ShiftFamily& fam, bool flip, int dim) {
  if (fam.terms.empty()) throw std::invalid_argument("shift family needs at least one term");
  CorrelationEntry e;
  std::vector<bool> keep;
  for (const auto& term : fam.terms) {
    if (term.shift.dim != dim) throw std::invalid_argument("family shift dimension mismatch");
    e.shifts.push_back(term.shift);
    keep.push_back(flip ? !term.keep : term.keep);
  }
  e.poly = StarPolynomial::indicator_product(keep);
  return e;
}

IfcResult run_ifc(const WitnessSource& source, const std::vector<ShiftFamily>& families,
                  std::int64_t horizon, SeededRng rng, double epsilon, bool restrict_to_naturals,
                  int dim) {
  CorrelationSpec spec;
  spec.domain = ValueDomain::binary01();

  CorrelationEntry mean;
  mean.shifts = {LatticePoint::zero(dim)};
  mean.poly = StarPolynomial::product(1);
  mean.target = source.target(mean);
  spec.entries.push_back(mean);

  for (const auto& fam : families) {
    CorrelationEntry e = family_entry(fam, fam.is_union, dim);
    e.target = source.target(e);
    spec.entries.push_back(e);
  }

  SynthesisSchedule schedule = default_synthesis_schedule(spec, horizon, epsilon);
  IfcResult out;
  out.synthesis = synthesize_sequence(spec, source, horizon, std::move(rng), &schedule);
  out.universe = out.synthesis.window.region();

  std::vector<LatticePoint> members;
  for (std::int64_t idx = 0; idx < out.universe.volume(); ++idx) {
    const LatticePoint g = out.universe.point_at(static_cast<std::size_t>(idx));
    if (out.synthesis.window.at(g).real() > 0.5) {
      if (restrict_to_naturals && g.c[0] < 1) continue;
      members.push_back(g);
    }
  }
  out.a = FiniteLatticeSet(std::move(members), dim);

  const LatticeBox f_region = restrict_to_naturals ? LatticeBox::cube(dim, 1, horizon)
                                                   : LatticeBox::cube(dim, 0, horizon);
  out.f_final = FiniteLatticeSet::from_box(f_region);

  for (const auto& fam : families) {
    IfcFamilyRow row;
    row.family = fam.describe();
    if (fam.is_union) {
      row.measured = set_density_union(out.a, out.universe, fam.terms, out.f_final);
      row.target = 1.0 - source.target(family_entry(fam, true, dim)).real();
    } else {
      row.measured = set_density(out.a, out.universe, fam.terms, out.f_final);
      row.target = source.target(family_entry(fam, false, dim)).real();
    }
    row.abs_err = std::abs(row.measured - row.target);
    out.rows.push_back(row);
    out.worst_err = std::max(out.worst_err, row.abs_err);
  }
  return out;
}

}  // namespace

IfcResult inverse_furstenberg(const FiniteMps& m, const std::vector<ShiftFamily>& families,
                              std::int64_t horizon, SeededRng rng, double epsilon) {
  if (!m.indicator_observable()) {
    throw std::invalid_argument("inverse correspondence needs a {0,1}-valued observable");
  }
  const MpsWitnessSource source(m);
  return run_ifc(source, families, horizon, std::move(rng), epsilon, false, m.dim());
}

IfcResult inverse_furstenberg_iid(double p, const std::vector<ShiftFamily>& families,
                                  std::int64_t horizon, SeededRng rng, double epsilon) {
  const IidBernoulliSource source(p);
  int dim = 1;
  if (!families.empty() && !families.front().terms.empty()) {
    dim = families.front().terms.front().shift.dim;
  }
  return run_ifc(source, families, horizon, std::move(rng), epsilon, false, dim);
}

IfcResult semigroup_ifc(const FiniteMps& m, const std::vector<ShiftFamily>& families,
                        std::int64_t horizon, SeededRng rng, double epsilon) {
  if (m.dim() != 1) throw std::invalid_argument("the semigroup restriction is for Z actions only");
  if (!m.indicator_observable()) {
    throw std::invalid_argument("inverse correspondence needs a {0,1}-valued observable");
  }
  const MpsWitnessSource source(m);
  return run_ifc(source, families, horizon, std::move(rng), epsilon, true, 1);
}

}  // namespace vdclab
