#include "vdclab/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vdclab/errors.hpp"

namespace vdclab {

ValueDomain ValueDomain::disc(double radius) {
  ValueDomain d;
  d.kind = Kind::Disc;
  d.radius = radius;
  return d;
}

ValueDomain ValueDomain::circle() {
  ValueDomain d;
  d.kind = Kind::Circle;
  return d;
}

ValueDomain ValueDomain::interval(double lo, double hi) {
  if (hi < lo) throw std::invalid_argument("interval domain needs lo <= hi");
  ValueDomain d;
  d.kind = Kind::Interval;
  d.lo = lo;
  d.hi = hi;
  return d;
}

ValueDomain ValueDomain::finite(std::vector<Complex> points) {
  if (points.empty()) throw std::invalid_argument("finite domain needs at least one point");
  ValueDomain d;
  d.kind = Kind::Finite;
  d.points = std::move(points);
  return d;
}

bool ValueDomain::contains(Complex z, double tol) const {
  switch (kind) {
    case Kind::Disc:
      return std::abs(z) <= radius + tol;
    case Kind::Circle:
      return std::abs(std::abs(z) - 1.0) <= tol;
    case Kind::Interval:
      return std::abs(z.imag()) <= tol && z.real() >= lo - tol && z.real() <= hi + tol;
    case Kind::Finite:
      for (const auto& p : points) {
        if (std::abs(z - p) <= tol) return true;
      }
      return false;
  }
  return false;
}

Complex ValueDomain::representative() const {
  switch (kind) {
    case Kind::Disc:
      return Complex(0.0, 0.0);
    case Kind::Circle:
      return Complex(1.0, 0.0);
    case Kind::Interval:
      return Complex(lo, 0.0);
    case Kind::Finite:
      return points.front();
  }
  return Complex(0.0, 0.0);
}

std::vector<Complex> ValueDomain::sample_grid(int n) const {
  std::vector<Complex> grid;
  switch (kind) {
    case Kind::Disc: {
      grid.emplace_back(0.0, 0.0);
      for (int r = 1; r <= n; ++r) {
        const double rr = radius * static_cast<double>(r) / n;
        for (int a = 0; a < 4 * n; ++a) {
          const double th = 2.0 * std::numbers::pi * a / (4 * n);
          grid.emplace_back(rr * std::cos(th), rr * std::sin(th));
        }
      }
      break;
    }
    case Kind::Circle: {
      for (int a = 0; a < 8 * n; ++a) {
        const double th = 2.0 * std::numbers::pi * a / (8 * n);
        grid.emplace_back(std::cos(th), std::sin(th));
      }
      break;
    }
    case Kind::Interval: {
      for (int i = 0; i <= 8 * n; ++i) {
        grid.emplace_back(lo + (hi - lo) * i / (8.0 * n), 0.0);
      }
      break;
    }
    case Kind::Finite:
      grid = points;
      break;
  }
  return grid;
}

std::string ValueDomain::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Disc:
      os << "disc(r=" << radius << ")";
      break;
    case Kind::Circle:
      os << "circle";
      break;
    case Kind::Interval:
      os << "interval[" << lo << "," << hi << "]";
      break;
    case Kind::Finite:
      os << "finite{";
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) os << ",";
        os << points[i].real();
        if (points[i].imag() != 0.0) os << (points[i].imag() > 0 ? "+" : "") << points[i].imag() << "i";
      }
      os << "}";
      break;
  }
  return os.str();
}

bool ValueDomain::operator==(const ValueDomain& o) const {
  return kind == o.kind && radius == o.radius && lo == o.lo && hi == o.hi && points == o.points;
}

SequenceWindow::SequenceWindow(const LatticeBox& region, ValueDomain domain, Complex fill)
    : region_(region), domain_(std::move(domain)) {
  if (!domain_.contains(fill)) {
    throw DomainError("fill value lies outside the window domain " + domain_.describe());
  }
  values_.assign(static_cast<std::size_t>(region_.volume()), fill);
}

SequenceWindow::SequenceWindow(const LatticeBox& region, ValueDomain domain, std::vector<Complex> values)
    : region_(region), domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(region_.volume())) {
    throw std::invalid_argument("window value count does not match region volume");
  }
}

Complex SequenceWindow::at(const LatticePoint& p) const {
  return values_[region_.index_of(p)];
}

Complex SequenceWindow::at_checked(const LatticePoint& p) const {
  if (!region_.contains(p)) {
    throw CoverageError("window does not cover lattice point " + p.to_string());
  }
  return values_[region_.index_of(p)];
}

void SequenceWindow::set(const LatticePoint& p, Complex z) {
  if (!region_.contains(p)) {
    throw CoverageError("window does not cover lattice point " + p.to_string());
  }
  values_[region_.index_of(p)] = z;
}

void SequenceWindow::validate_domain(double tol) const {
  for (const auto& z : values_) {
    if (!domain_.contains(z, tol)) {
      std::ostringstream os;
      os << "window value (" << z.real() << "," << z.imag() << ") lies outside " << domain_.describe();
      throw DomainError(os.str());
    }
  }
}

namespace {

Complex int_power(Complex z, int n) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

}  // namespace

Complex StarPolynomial::eval(const std::vector<Complex>& z) const {
  return eval(z.data(), static_cast<int>(z.size()));
}

Complex StarPolynomial::eval(const Complex* z, int n) const {
  if (n != arity) throw std::invalid_argument("star polynomial arity mismatch");
  Complex acc(0.0, 0.0);
  for (const auto& term : terms) {
    Complex t = term.coeff;
    for (int i = 0; i < arity; ++i) {
      const auto [a, b] = term.exponents[static_cast<std::size_t>(i)];
      if (a) t *= int_power(z[i], a);
      if (b) t *= int_power(std::conj(z[i]), b);
    }
    acc += t;
  }
  return acc;
}

double StarPolynomial::sampled_sup(const ValueDomain& domain, int grid_n) const {
  const auto grid = domain.sample_grid(grid_n);
  double sup = 0.0;
  std::vector<Complex> z(static_cast<std::size_t>(arity));
  // Randomized slot assignment would be overkill; vary each slot through the
  // grid with coprime strides so small arities see the grid corners.
  const std::size_t m = grid.size();
  const std::size_t combos = std::min<std::size_t>(m * m, 4096);
  for (std::size_t c = 0; c < combos; ++c) {
    for (int i = 0; i < arity; ++i) {
      z[static_cast<std::size_t>(i)] = grid[(c * (static_cast<std::size_t>(i) * 2 + 1) + c / m) % m];
    }
    sup = std::max(sup, std::abs(eval(z)));
  }
  return sup;
}

StarPolynomial StarPolynomial::product(int arity, double sup_bound) {
  if (arity < 1) throw std::invalid_argument("star polynomial arity must be >= 1");
  StarPolynomial p;
  p.arity = arity;
  Term t;
  t.coeff = Complex(1.0, 0.0);
  t.exponents.assign(static_cast<std::size_t>(arity), {1, 0});
  p.terms.push_back(std::move(t));
  p.sup_bound = sup_bound;
  return p;
}

StarPolynomial StarPolynomial::power(int a, int b, double sup_bound) {
  StarPolynomial p;
  p.arity = 1;
  Term t;
  t.coeff = Complex(1.0, 0.0);
  t.exponents = {{a, b}};
  p.terms.push_back(std::move(t));
  p.sup_bound = sup_bound;
  return p;
}

StarPolynomial StarPolynomial::indicator_product(const std::vector<bool>& keep) {
  const int arity = static_cast<int>(keep.size());
  if (arity < 1) throw std::invalid_argument("indicator product needs at least one slot");
  // Expand prod_i (keep_i ? x_i : 1 - x_i) into monomials.
  StarPolynomial p;
  p.arity = arity;
  std::vector<Term> acc;
  acc.push_back({Complex(1.0, 0.0), std::vector<std::pair<int, int>>(static_cast<std::size_t>(arity), {0, 0})});
  for (int i = 0; i < arity; ++i) {
    std::vector<Term> next;
    for (const auto& t : acc) {
      if (keep[static_cast<std::size_t>(i)]) {
        Term t1 = t;
        t1.exponents[static_cast<std::size_t>(i)] = {1, 0};
        next.push_back(std::move(t1));
      } else {
        next.push_back(t);  // the "1" branch
        Term t1 = t;
        t1.coeff *= -1.0;
        t1.exponents[static_cast<std::size_t>(i)] = {1, 0};
        next.push_back(std::move(t1));
      }
    }
    acc = std::move(next);
  }
  p.terms = std::move(acc);
  p.sup_bound = 1.0;  // exact on {0,1}-valued slots
  return p;
}

void CorrelationEntry::validate() const {
  if (shifts.empty()) throw std::invalid_argument("correlation entry needs at least one shift");
  if (static_cast<int>(shifts.size()) != poly.arity) {
    throw std::invalid_argument("correlation entry shift count must match polynomial arity");
  }
  for (const auto& t : poly.terms) {
    if (t.exponents.size() != shifts.size()) {
      throw std::invalid_argument("star polynomial term has wrong slot count");
    }
    for (const auto& [a, b] : t.exponents) {
      if (a < 0 || b < 0) throw std::invalid_argument("star polynomial exponents must be nonnegative");
    }
  }
  if (distinct_shifts) {
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      for (std::size_t j = i + 1; j < shifts.size(); ++j) {
        if (shifts[i] == shifts[j]) {
          throw std::invalid_argument("entry flagged distinct-mode has repeated shifts");
        }
      }
    }
  }
}

LatticeBox CorrelationEntry::needed_region(const LatticeBox& f_region) const {
  LatticeBox need = f_region.translated(shifts.front());
  for (std::size_t i = 1; i < shifts.size(); ++i) {
    need = need.hull(f_region.translated(shifts[i]));
  }
  return need;
}

void CorrelationSpec::validate() const {
  for (const auto& e : entries) e.validate();
}

double CorrelationSpec::max_sup_bound() const {
  double m = 1.0;
  for (const auto& e : entries) m = std::max(m, e.poly.sup_bound);
  return m;
}

std::int64_t CorrelationSpec::shift_diameter() const {
  std::int64_t diam = 0;
  for (const auto& e : entries) {
    for (const auto& h : e.shifts) {
      for (int i = 0; i < h.dim; ++i) diam = std::max(diam, std::abs(h.c[i]));
    }
  }
  return diam;
}

namespace {

template <typename T>
T pairwise_sum_impl(const T* data, std::size_t n) {
  if (n <= 16) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(data, half) + pairwise_sum_impl(data + half, n - half);
}

}  // namespace

Complex pairwise_sum(const std::vector<Complex>& values) {
  return pairwise_sum_impl(values.data(), values.size());
}

double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum_impl(values.data(), values.size());
}

}  // namespace vdclab
