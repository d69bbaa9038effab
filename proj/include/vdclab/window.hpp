#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "vdclab/lattice.hpp"

namespace vdclab {

using Complex = std::complex<double>;

inline constexpr double kDomainTol = 1e-12;

// The compact set D the sequence values live in.
struct ValueDomain {
  enum class Kind { Disc, Circle, Interval, Finite };

  Kind kind = Kind::Disc;
  double radius = 1.0;                 // Disc
  double lo = 0.0, hi = 1.0;           // Interval (real segment)
  std::vector<Complex> points;         // Finite

  static ValueDomain disc(double radius = 1.0);
  static ValueDomain circle();
  static ValueDomain interval(double lo, double hi);
  static ValueDomain finite(std::vector<Complex> points);
  static ValueDomain binary01() { return finite({Complex(0.0, 0.0), Complex(1.0, 0.0)}); }
  static ValueDomain pm1() { return finite({Complex(-1.0, 0.0), Complex(1.0, 0.0)}); }

  bool contains(Complex z, double tol = kDomainTol) const;
  // A value of the domain usable as filler.
  Complex representative() const;
  // Deterministic sample grid used to probe sup norms.
  std::vector<Complex> sample_grid(int n) const;
  std::string describe() const;

  bool operator==(const ValueDomain& o) const;
};

// A finite assignment g -> z_g on a box region of Z^d.
class SequenceWindow {
 public:
  SequenceWindow() = default;
  // Initializes every site to `fill` (must lie in the domain).
  SequenceWindow(const LatticeBox& region, ValueDomain domain, Complex fill);
  SequenceWindow(const LatticeBox& region, ValueDomain domain, std::vector<Complex> values);

  const LatticeBox& region() const { return region_; }
  const ValueDomain& domain() const { return domain_; }
  int dim() const { return region_.dim; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }

  bool covers(const LatticePoint& p) const { return region_.contains(p); }
  Complex at(const LatticePoint& p) const;
  // Throws CoverageError with a descriptive message if p is uncovered.
  Complex at_checked(const LatticePoint& p) const;
  void set(const LatticePoint& p, Complex z);

  // Verifies every value lies in the domain (within tol). Throws DomainError.
  void validate_domain(double tol = kDomainTol) const;

 private:
  LatticeBox region_;
  ValueDomain domain_;
  std::vector<Complex> values_;
};

// A *-polynomial p(z_1..z_j) = sum of c * prod_i z_i^{a_i} conj(z_i)^{b_i}.
struct StarPolynomial {
  struct Term {
    Complex coeff;
    // One (a, b) exponent pair per slot.
    std::vector<std::pair<int, int>> exponents;
  };

  int arity = 1;
  std::vector<Term> terms;
  double sup_bound = 1.0;

  Complex eval(const std::vector<Complex>& z) const;
  Complex eval(const Complex* z, int n) const;

  // Largest |p| over the domain's sample grid (a lower bound for the true
  // sup norm; used to sanity-check sup_bound).
  double sampled_sup(const ValueDomain& domain, int grid_n = 8) const;

  // p(z_1..z_j) = z_1 * z_2 * ... * z_j.
  static StarPolynomial product(int arity, double sup_bound = 1.0);
  // p(z) = z^a conj(z)^b.
  static StarPolynomial power(int a, int b, double sup_bound = 1.0);
  // prod_i (x_i if keep_i else 1 - x_i), for {0,1}-valued slots.
  static StarPolynomial indicator_product(const std::vector<bool>& keep);
};

// One correlation constraint: shifts (h_1..h_j), polynomial, optional target.
struct CorrelationEntry {
  std::vector<LatticePoint> shifts;
  StarPolynomial poly;
  std::optional<Complex> target;
  bool distinct_shifts = false;

  int arity() const { return static_cast<int>(shifts.size()); }
  void validate() const;
  // Bounding box of {h + g : h in shifts, g in F-region}.
  LatticeBox needed_region(const LatticeBox& f_region) const;
};

struct CorrelationSpec {
  ValueDomain domain = ValueDomain::disc();
  std::vector<CorrelationEntry> entries;

  void validate() const;
  double max_sup_bound() const;
  // L-infinity spread of all shifts together with the origin.
  std::int64_t shift_diameter() const;
};

// Fixed pairwise reduction; keeps sums bit-stable for a given length.
Complex pairwise_sum(const std::vector<Complex>& values);
double pairwise_sum(const std::vector<double>& values);

}  // namespace vdclab
