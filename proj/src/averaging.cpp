#include "vdclab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vdclab/errors.hpp"

namespace vdclab {

Complex cesaro_correlation(const SequenceWindow& w, const CorrelationEntry& e,
                           const FiniteLatticeSet& f) {
  e.validate();
  if (f.empty()) throw std::invalid_argument("cesaro_correlation over empty F");
  const int j = e.arity();
  std::vector<Complex> slot(static_cast<std::size_t>(j));
  std::vector<Complex> summands;
  summands.reserve(f.size());
  for (const auto& g : f.points()) {
    for (int i = 0; i < j; ++i) {
      slot[static_cast<std::size_t>(i)] = w.at_checked(e.shifts[static_cast<std::size_t>(i)] + g);
    }
    summands.push_back(e.poly.eval(slot));
  }
  return pairwise_sum(summands) / static_cast<double>(f.size());
}

Complex cesaro_mean(const SequenceWindow& w, const FiniteLatticeSet& f) {
  if (f.empty()) throw std::invalid_argument("cesaro_mean over empty F");
  std::vector<Complex> summands;
  summands.reserve(f.size());
  for (const auto& g : f.points()) summands.push_back(w.at_checked(g));
  return pairwise_sum(summands) / static_cast<double>(f.size());
}

WeylReport weyl_ud_test(const SequenceWindow& w, int l_max, const FiniteLatticeSet& f, double tol) {
  if (w.domain().kind != ValueDomain::Kind::Circle) {
    throw DomainError("Weyl test requires a circle-tagged window");
  }
  if (l_max < 1) throw std::invalid_argument("Weyl test needs L_max >= 1");
  if (f.empty()) throw std::invalid_argument("Weyl test over empty F");

  WeylReport report;
  report.tol = tol;
  report.values.assign(static_cast<std::size_t>(l_max), 0.0);

  // Accumulate all powers in one sweep: z^l built incrementally per site.
  std::vector<std::vector<Complex>> sums(static_cast<std::size_t>(l_max));
  for (auto& s : sums) s.reserve(f.size());
  for (const auto& g : f.points()) {
    const Complex z = w.at_checked(g);
    Complex p(1.0, 0.0);
    for (int l = 1; l <= l_max; ++l) {
      p *= z;
      sums[static_cast<std::size_t>(l - 1)].push_back(p);
    }
  }
  report.pass = true;
  for (int l = 1; l <= l_max; ++l) {
    const double v = std::abs(pairwise_sum(sums[static_cast<std::size_t>(l - 1)])) / static_cast<double>(f.size());
    report.values[static_cast<std::size_t>(l - 1)] = v;
    if (v > report.worst_value) {
      report.worst_value = v;
      report.worst_l = l;
    }
    if (v > tol) report.pass = false;
  }
  if (report.worst_l == 0) report.worst_l = 1;
  return report;
}

namespace {

bool membership(const FiniteLatticeSet& a, const LatticeBox& universe, const LatticePoint& p, bool keep) {
  if (!universe.contains(p)) {
    throw CoverageError("set_density universe does not cover shifted point " + p.to_string());
  }
  const bool in = a.contains(p);
  return keep ? in : !in;
}

}  // namespace

double set_density(const FiniteLatticeSet& a, const LatticeBox& universe,
                   const std::vector<ShiftTerm>& shifts, const FiniteLatticeSet& f) {
  if (shifts.empty()) throw std::invalid_argument("set_density needs at least one shift term");
  if (f.empty()) throw std::invalid_argument("set_density over empty F");
  std::size_t count = 0;
  for (const auto& g : f.points()) {
    bool all = true;
    for (const auto& term : shifts) {
      if (!membership(a, universe, g + term.shift, term.keep)) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(f.size());
}

double set_density_union(const FiniteLatticeSet& a, const LatticeBox& universe,
                         const std::vector<ShiftTerm>& shifts, const FiniteLatticeSet& f) {
  if (shifts.empty()) throw std::invalid_argument("set_density_union needs at least one shift term");
  if (f.empty()) throw std::invalid_argument("set_density_union over empty F");
  std::size_t count = 0;
  for (const auto& g : f.points()) {
    bool any = false;
    for (const auto& term : shifts) {
      if (membership(a, universe, g + term.shift, term.keep)) {
        any = true;
        break;
      }
    }
    if (any) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(f.size());
}

double banach_density_estimate(const FiniteLatticeSet& a, const LatticeBox& window, std::int64_t l) {
  if (l < 1) throw std::invalid_argument("banach_density_estimate needs L >= 1");
  for (int i = 0; i < window.dim; ++i) {
    if (l > window.side(i)) throw std::invalid_argument("banach_density_estimate: L exceeds window side");
  }
  const std::int64_t vol = window.volume();
  // Integral table over the window: counts of A in the prefix boxes.
  // Indexed with a one-cell guard band on the low side of each axis.
  std::array<std::int64_t, kMaxDim> n{1, 1, 1};
  for (int i = 0; i < window.dim; ++i) n[static_cast<std::size_t>(i)] = window.side(i);
  const auto at = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    return static_cast<std::size_t>(((x + 1) * (n[1] + 1) + (y + 1)) * (n[2] + 1) + (z + 1));
  };
  std::vector<std::int64_t> table(static_cast<std::size_t>((n[0] + 1) * (n[1] + 1) * (n[2] + 1)), 0);
  for (std::int64_t idx = 0; idx < vol; ++idx) {
    const LatticePoint p = window.point_at(static_cast<std::size_t>(idx));
    std::array<std::int64_t, kMaxDim> r{0, 0, 0};
    for (int i = 0; i < window.dim; ++i) r[static_cast<std::size_t>(i)] = p.c[i] - window.lo[i];
    table[at(r[0], r[1], r[2])] = a.contains(p) ? 1 : 0;
  }
  for (std::int64_t x = 0; x < n[0]; ++x) {
    for (std::int64_t y = 0; y < n[1]; ++y) {
      for (std::int64_t z = 0; z < n[2]; ++z) {
        table[at(x, y, z)] += table[at(x - 1, y, z)] + table[at(x, y - 1, z)] + table[at(x, y, z - 1)] -
                              table[at(x - 1, y - 1, z)] - table[at(x - 1, y, z - 1)] - table[at(x, y - 1, z - 1)] +
                              table[at(x - 1, y - 1, z - 1)];
      }
    }
  }
  const auto box_count = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    // Count inside [x, x+l) x [y, y+l) x [z, z+l) intersected with the
    // window (axes beyond dim collapse to the single cell).
    const std::int64_t x1 = x + l - 1, y1 = window.dim >= 2 ? y + l - 1 : y, z1 = window.dim >= 3 ? z + l - 1 : z;
    return table[at(x1, y1, z1)] - table[at(x - 1, y1, z1)] - table[at(x1, y - 1, z1)] - table[at(x1, y1, z - 1)] +
           table[at(x - 1, y - 1, z1)] + table[at(x - 1, y1, z - 1)] + table[at(x1, y - 1, z - 1)] -
           table[at(x - 1, y - 1, z - 1)];
  };
  std::int64_t best = 0;
  std::int64_t denom = 1;
  for (int i = 0; i < window.dim; ++i) denom *= l;
  const std::int64_t xs = n[0] - l + 1;
  const std::int64_t ys = window.dim >= 2 ? n[1] - l + 1 : 1;
  const std::int64_t zs = window.dim >= 3 ? n[2] - l + 1 : 1;
  for (std::int64_t x = 0; x < xs; ++x) {
    for (std::int64_t y = 0; y < ys; ++y) {
      for (std::int64_t z = 0; z < zs; ++z) {
        best = std::max(best, box_count(x, y, z));
      }
    }
  }
  return static_cast<double>(best) / static_cast<double>(denom);
}

double limsup_over_h(const std::vector<double>& values, std::size_t truncation) {
  if (values.empty()) throw std::invalid_argument("limsup_over_h needs at least one value");
  if (truncation >= values.size()) {
    throw std::invalid_argument("limsup_over_h truncation must be < value count");
  }
  // Suffix maxima, then the best (smallest) over allowed prefix cuts.
  std::vector<double> suffix(values.size());
  suffix.back() = values.back();
  for (std::size_t i = values.size() - 1; i-- > 0;) {
    suffix[i] = std::max(values[i], suffix[i + 1]);
  }
  double best = suffix[0];
  for (std::size_t t = 1; t <= truncation; ++t) best = std::min(best, suffix[t]);
  return best;
}

}  // namespace vdclab
