#include "vdclab/randomization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vdclab/averaging.hpp"
#include "vdclab/errors.hpp"
#include "vdclab/simplex.hpp"

namespace vdclab {

Complex sample_biased_circle(Complex w, SeededRng& rng) {
  const double r = std::abs(w);
  if (r > 1.0 + 1e-12) throw std::invalid_argument("biased circle parameter must satisfy |w| <= 1");
  if (r < 1e-15) return rng.uniform_unit();
  const double phi = std::arg(w);
  const double envelope = 1.0 + std::min(r, 1.0);
  for (;;) {
    const double theta = rng.uniform_angle();
    const double u = rng.uniform01() * envelope;
    if (u <= 1.0 + std::min(r, 1.0) * std::cos(theta - phi)) {
      return {std::cos(theta), std::sin(theta)};
    }
  }
}

namespace {

Complex bundle_mean(const WitnessBundle& bundle, const FiniteLatticeSet& a) {
  Complex mean(0.0, 0.0);
  const double total = static_cast<double>(bundle.total_count());
  for (std::size_t k = 0; k < bundle.sequences.size(); ++k) {
    mean += (static_cast<double>(bundle.multiplicity[k]) / total) *
            cesaro_mean(bundle.sequences[k], a);
  }
  return mean;
}

}  // namespace

LiftResult lift_witnesses_to_circle(const WitnessBundle& input, const LatticeBox& a_region,
                                    const std::vector<LatticePoint>& shifts, int l_max,
                                    double delta, SeededRng& rng) {
  input.validate();
  if (l_max < 1) throw std::invalid_argument("lift needs L >= 1");
  if (delta <= 0.0) throw std::invalid_argument("lift tolerance must be positive");
  const FiniteLatticeSet a = FiniteLatticeSet::from_box(a_region);
  const Complex target_mean = bundle_mean(input, a) / 2.0;

  LiftResult out;
  out.bundle.domain = ValueDomain::circle();
  out.bundle.provenance = "circle lift of: " + input.provenance;

  const LatticeBox region = input.region();
  const auto add_replica = [&](int replica_id) {
    for (std::size_t k = 0; k < input.sequences.size(); ++k) {
      SequenceWindow w(region, ValueDomain::circle(), Complex(1.0, 0.0));
      const std::uint64_t salt =
          SeededRng::mix(static_cast<std::uint64_t>(replica_id) * 0x100003ULL + k);
      for (std::int64_t idx = 0; idx < region.volume(); ++idx) {
        const LatticePoint g = region.point_at(static_cast<std::size_t>(idx));
        SeededRng site = rng.substream(g, salt);
        w.set(g, sample_biased_circle(input.sequences[k].at(g), site));
      }
      out.bundle.sequences.push_back(std::move(w));
      out.bundle.multiplicity.push_back(input.multiplicity[k]);
    }
  };

  int target_m = 1;
  int built = 0;
  for (;;) {
    while (built < target_m) add_replica(built++);
    out.replicas = target_m;

    // Power-l cross-correlation statistics over the lifted family.
    double worst = 0.0;
    const double total = static_cast<double>(out.bundle.total_count());
    for (const auto& h : shifts) {
      for (int l = 1; l <= l_max; ++l) {
        CorrelationEntry e;
        e.shifts = {h, LatticePoint::zero(region.dim)};
        e.poly = StarPolynomial{2, {{Complex(1.0, 0.0), {{l, 0}, {0, l}}}}, 1.0};
        Complex stat(0.0, 0.0);
        for (std::size_t k = 0; k < out.bundle.sequences.size(); ++k) {
          stat += (static_cast<double>(out.bundle.multiplicity[k]) / total) *
                  cesaro_correlation(out.bundle.sequences[k], e, a);
        }
        worst = std::max(worst, std::abs(stat));
      }
    }
    out.worst_power_stat = worst;
    out.mean_error = std::abs(bundle_mean(out.bundle, a) - target_mean);
    if (out.worst_power_stat <= delta && out.mean_error <= delta) return out;
    if (2 * target_m > kLiftReplicaCap) {
      throw ConvergenceError("circle lift exceeded its replica cap before meeting delta");
    }
    target_m *= 2;
  }
}

std::vector<double> convex_representation(Complex z, const std::vector<Complex>& d) {
  constexpr double kHullTol = 1e-9;
  if (d.empty()) throw std::invalid_argument("convex representation needs a nonempty point set");
  const std::size_t n = d.size();
  std::vector<double> lambda(n, 0.0);

  // Exact hit on a vertex.
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(z - d[i]) <= kHullTol) {
      lambda[i] = 1.0;
      return lambda;
    }
  }
  if (n == 1) throw GeometryError("value lies outside the singleton hull");

  if (n == 2) {
    const Complex dir = d[1] - d[0];
    const double len2 = std::norm(dir);
    if (len2 == 0.0) throw GeometryError("degenerate two-point hull");
    const double t = ((z - d[0]) * std::conj(dir)).real() / len2;
    const Complex proj = d[0] + t * dir;
    if (std::abs(z - proj) > kHullTol || t < -kHullTol || t > 1.0 + kHullTol) {
      throw GeometryError("value lies outside the segment hull");
    }
    lambda[0] = std::clamp(1.0 - t, 0.0, 1.0);
    lambda[1] = std::clamp(t, 0.0, 1.0);
    return lambda;
  }

  if (n == 3) {
    // Barycentric coordinates; fall through to the LP if the triangle is flat.
    const double x1 = d[0].real(), y1 = d[0].imag();
    const double x2 = d[1].real(), y2 = d[1].imag();
    const double x3 = d[2].real(), y3 = d[2].imag();
    const double det = (y2 - y3) * (x1 - x3) + (x3 - x2) * (y1 - y3);
    if (std::abs(det) > 1e-12) {
      const double l1 = ((y2 - y3) * (z.real() - x3) + (x3 - x2) * (z.imag() - y3)) / det;
      const double l2 = ((y3 - y1) * (z.real() - x3) + (x1 - x3) * (z.imag() - y3)) / det;
      const double l3 = 1.0 - l1 - l2;
      if (l1 < -kHullTol || l2 < -kHullTol || l3 < -kHullTol) {
        throw GeometryError("value lies outside the triangle hull");
      }
      lambda = {std::max(l1, 0.0), std::max(l2, 0.0), std::max(l3, 0.0)};
      const double s = lambda[0] + lambda[1] + lambda[2];
      for (auto& l : lambda) l /= s;
      return lambda;
    }
  }

  // Minimal-support solution of the feasibility LP (a basic feasible point
  // has at most 3 nonzero weights).
  LinearProgram lp;
  lp.rows = 3;
  lp.cols = n;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b = {z.real(), z.imag(), 1.0};
  lp.c.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lp.at(0, i) = d[i].real();
    lp.at(1, i) = d[i].imag();
    lp.at(2, i) = 1.0;
  }
  const LpSolution sol = solve_lp(lp);
  if (!sol.feasible) throw GeometryError("value lies outside the convex hull of D");
  lambda = sol.x;
  Complex resid(-z.real(), -z.imag());
  for (std::size_t i = 0; i < n; ++i) resid += lambda[i] * d[i];
  if (std::abs(resid) > kHullTol) throw GeometryError("convex representation residual too large");
  return lambda;
}

SequenceWindow convexify_window(const SequenceWindow& w, const std::vector<Complex>& d,
                                SeededRng& rng) {
  const ValueDomain target = ValueDomain::finite(d);
  SequenceWindow out(w.region(), target, d.front());
  const bool binary01 = d.size() == 2 && std::abs(d[0]) <= 1e-15 && std::abs(d[1] - Complex(1.0, 0.0)) <= 1e-15;
  const bool pm1 = d.size() == 2 && std::abs(d[0] + Complex(1.0, 0.0)) <= 1e-15 &&
                   std::abs(d[1] - Complex(1.0, 0.0)) <= 1e-15;
  for (std::int64_t idx = 0; idx < w.region().volume(); ++idx) {
    const LatticePoint g = w.region().point_at(static_cast<std::size_t>(idx));
    const Complex z = w.at(g);
    SeededRng site = rng.substream(g, 0x636f6e76ULL);
    Complex value;
    if (binary01) {
      const double p = z.real();
      if (std::abs(z.imag()) > 1e-9 || p < -1e-9 || p > 1.0 + 1e-9) {
        throw GeometryError("value lies outside [0,1] for the Bernoulli representation");
      }
      value = site.uniform01() < p ? d[1] : d[0];
    } else if (pm1) {
      const double p = (1.0 + z.real()) / 2.0;
      if (std::abs(z.imag()) > 1e-9 || p < -1e-9 || p > 1.0 + 1e-9) {
        throw GeometryError("value lies outside [-1,1] for the +-1 representation");
      }
      value = site.uniform01() < p ? d[1] : d[0];
    } else {
      const auto lambda = convex_representation(z, d);
      double u = site.uniform01();
      std::size_t pick = d.size() - 1;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (u < lambda[i]) {
          pick = i;
          break;
        }
        u -= lambda[i];
      }
      value = d[pick];
    }
    out.set(g, value);
  }
  return out;
}

SequenceWindow white_noise_window(const LatticeBox& region, const SeededRng& rng) {
  SequenceWindow w(region, ValueDomain::circle(), Complex(1.0, 0.0));
  for (std::int64_t idx = 0; idx < region.volume(); ++idx) {
    const LatticePoint g = region.point_at(static_cast<std::size_t>(idx));
    SeededRng site = rng.substream(g, 0x776e6f69ULL);
    w.set(g, site.uniform_unit());
  }
  return w;
}

}  // namespace vdclab
