#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vdclab/averaging.hpp"
#include "vdclab/errors.hpp"
#include "vdclab/rng.hpp"

using namespace vdclab;

namespace {

SequenceWindow rotation_window(std::int64_t n, double alpha, std::int64_t pad = 8) {
  SequenceWindow w(LatticeBox::cube(1, -pad, n + pad), ValueDomain::circle(), Complex(1.0, 0.0));
  for (std::int64_t i = -pad; i < n + pad; ++i) {
    const double th = 2.0 * std::numbers::pi * alpha * static_cast<double>(i);
    w.set(LatticePoint(i), Complex(std::cos(th), std::sin(th)));
  }
  return w;
}

FiniteLatticeSet range_1d(std::int64_t lo, std::int64_t hi) {
  return FiniteLatticeSet::from_box(LatticeBox::cube(1, lo, hi));
}

CorrelationEntry pair_entry(std::int64_t h) {
  CorrelationEntry e;
  e.shifts = {LatticePoint(h), LatticePoint(0)};
  e.poly = StarPolynomial{2, {{Complex(1.0, 0.0), {{1, 0}, {0, 1}}}}, 1.0};
  return e;
}

}  // namespace

TEST_CASE("cesaro_correlation pinned examples") {
  SUBCASE("constant window, identity polynomial") {
    SequenceWindow w(LatticeBox::cube(1, 0, 64), ValueDomain::disc(), Complex(0.3, -0.2));
    CorrelationEntry e;
    e.shifts = {LatticePoint(0)};
    e.poly = StarPolynomial::product(1);
    const Complex v = cesaro_correlation(w, e, range_1d(0, 64));
    CHECK(std::abs(v - Complex(0.3, -0.2)) < 1e-14);
  }
  SUBCASE("alternating signs, product over a unit shift") {
    const std::int64_t n = 100;
    SequenceWindow w(LatticeBox::cube(1, 0, n + 1), ValueDomain::pm1(), Complex(1.0, 0.0));
    for (std::int64_t i = 0; i <= n; ++i) {
      w.set(LatticePoint(i), Complex(i % 2 == 0 ? 1.0 : -1.0, 0.0));
    }
    CorrelationEntry e;
    e.shifts = {LatticePoint(0), LatticePoint(1)};
    e.poly = StarPolynomial::product(2);
    const Complex v = cesaro_correlation(w, e, range_1d(0, n));
    CHECK(v.real() == doctest::Approx(-1.0));
    CHECK(std::abs(v.imag()) < 1e-14);
  }
  SUBCASE("irrational rotation mean decays at the geometric-sum rate") {
    const std::int64_t n = 100000;
    const double alpha = std::numbers::sqrt2 - 1.0;
    const SequenceWindow w = rotation_window(n, alpha);
    CorrelationEntry e;
    e.shifts = {LatticePoint(0)};
    e.poly = StarPolynomial::product(1);
    const double bound = 1.0 / (static_cast<double>(n) * std::sin(std::numbers::pi * alpha));
    CHECK(std::abs(cesaro_correlation(w, e, range_1d(0, n))) <= 1.1 * bound);
    CHECK(1.1 * bound <= 1.1e-5);
  }
  SUBCASE("missing coverage is reported") {
    SequenceWindow w(LatticeBox::cube(1, 0, 8), ValueDomain::disc(), Complex(0.0, 0.0));
    CHECK_THROWS_AS(cesaro_correlation(w, pair_entry(1), range_1d(0, 8)), CoverageError);
  }
}

TEST_CASE("cesaro_correlation is linear in the polynomial coefficients") {
  SeededRng rng(101);
  const auto f = range_1d(0, 50);
  SequenceWindow w(LatticeBox::cube(1, -2, 55), ValueDomain::disc(), Complex(0.0, 0.0));
  for (std::int64_t i = -2; i < 55; ++i) {
    const double r = std::sqrt(rng.uniform01());
    const double th = rng.uniform_angle();
    w.set(LatticePoint(i), Complex(r * std::cos(th), r * std::sin(th)));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Complex c1(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    const Complex c2(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    CorrelationEntry both, first, second;
    both.shifts = first.shifts = second.shifts = {LatticePoint(1), LatticePoint(-2)};
    first.poly = StarPolynomial{2, {{c1, {{1, 0}, {0, 1}}}}, 2.0};
    second.poly = StarPolynomial{2, {{c2, {{2, 0}, {1, 0}}}}, 2.0};
    both.poly = StarPolynomial{2, {first.poly.terms[0], second.poly.terms[0]}, 4.0};
    const Complex sum = cesaro_correlation(w, first, f) + cesaro_correlation(w, second, f);
    CHECK(std::abs(cesaro_correlation(w, both, f) - sum) < 1e-12);
  }
}

TEST_CASE("weyl test") {
  SUBCASE("silver rotation passes at tol 0.01") {
    const std::int64_t n = 100000;
    const double alpha = std::numbers::sqrt2 - 1.0;
    const SequenceWindow w = rotation_window(n, alpha, 0);
    const auto report = weyl_ud_test(w, 8, range_1d(0, n), 0.01);
    CHECK(report.pass);
    for (int l = 1; l <= 8; ++l) {
      const double bound =
          1.0 / (static_cast<double>(n) * std::abs(std::sin(std::numbers::pi * l * alpha)));
      CHECK(report.values[static_cast<std::size_t>(l - 1)] <= 1.0000001 * bound);
    }
  }
  SUBCASE("constant sequence fails at l=1 with value 1") {
    SequenceWindow w(LatticeBox::cube(1, 0, 100), ValueDomain::circle(), Complex(1.0, 0.0));
    const auto report = weyl_ud_test(w, 4, range_1d(0, 100), 0.01);
    CHECK_FALSE(report.pass);
    CHECK(report.worst_l == 1);
    CHECK(report.worst_value == doctest::Approx(1.0));
  }
  SUBCASE("period-4 rotation fails exactly at l=4") {
    const std::int64_t n = 100;  // multiple of 4 so lower powers cancel
    const SequenceWindow w = rotation_window(n, 0.25, 0);
    const auto report = weyl_ud_test(w, 4, range_1d(0, n), 0.01);
    CHECK_FALSE(report.pass);
    CHECK(report.worst_l == 4);
    CHECK(report.worst_value == doctest::Approx(1.0));
    CHECK(report.values[0] < 0.011);
    CHECK(report.values[1] < 0.011);
    CHECK(report.values[2] < 0.011);
  }
  SUBCASE("non-circle windows are rejected") {
    SequenceWindow w(LatticeBox::cube(1, 0, 10), ValueDomain::disc(), Complex(0.5, 0.0));
    CHECK_THROWS_AS(weyl_ud_test(w, 2, range_1d(0, 10), 0.01), DomainError);
  }
  SUBCASE("per-power statistics are rotation invariant") {
    SeededRng rng(5);
    const std::int64_t n = 500;
    SequenceWindow w(LatticeBox::cube(1, 0, n), ValueDomain::circle(), Complex(1.0, 0.0));
    SequenceWindow w2 = w;
    const Complex omega = SeededRng(99).uniform_unit();
    for (std::int64_t i = 0; i < n; ++i) {
      const Complex z = rng.uniform_unit();
      w.set(LatticePoint(i), z);
      w2.set(LatticePoint(i), omega * z);
    }
    const auto r1 = weyl_ud_test(w, 6, range_1d(0, n), 1.0);
    const auto r2 = weyl_ud_test(w2, 6, range_1d(0, n), 1.0);
    for (int l = 0; l < 6; ++l) {
      CHECK(r1.values[static_cast<std::size_t>(l)] ==
            doctest::Approx(r2.values[static_cast<std::size_t>(l)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("set_density") {
  const LatticeBox universe = LatticeBox::cube(1, -8, 120);
  std::vector<LatticePoint> even_pts;
  for (std::int64_t i = -8; i < 120; i += 2) even_pts.emplace_back(i);
  const FiniteLatticeSet evens(even_pts, 1);
  const auto f = range_1d(0, 100);

  CHECK(set_density(evens, universe, {{LatticePoint(0), true}}, f) == doctest::Approx(0.5));
  CHECK(set_density(evens, universe, {{LatticePoint(0), true}, {LatticePoint(1), true}}, f) == 0.0);
  CHECK(set_density(evens, universe, {{LatticePoint(0), true}, {LatticePoint(2), true}}, f) ==
        doctest::Approx(0.5));
  // Complement within the universe: odd sites.
  CHECK(set_density(evens, universe, {{LatticePoint(0), false}}, f) == doctest::Approx(0.5));
  // Union: evens or odds is everything.
  CHECK(set_density_union(evens, universe, {{LatticePoint(0), true}, {LatticePoint(1), true}}, f) == 1.0);
  CHECK_THROWS_AS(set_density(evens, universe, {{LatticePoint(1000), true}}, f), CoverageError);
}

TEST_CASE("banach_density_estimate") {
  SUBCASE("full set") {
    const auto window = LatticeBox::cube(1, 0, 64);
    CHECK(banach_density_estimate(FiniteLatticeSet::from_box(window), window, 8) == 1.0);
  }
  SUBCASE("period-4 pattern has density 1/2 at L multiple of 4") {
    std::vector<LatticePoint> pts;
    for (std::int64_t i = 0; i < 256; ++i) {
      if (i % 4 < 2) pts.emplace_back(i);
    }
    CHECK(banach_density_estimate(FiniteLatticeSet(pts, 1), LatticeBox::cube(1, 0, 256), 8) ==
          doctest::Approx(0.5));
  }
  SUBCASE("one full block is found") {
    std::vector<LatticePoint> pts;
    for (std::int64_t i = 100; i < 116; ++i) pts.emplace_back(i);
    CHECK(banach_density_estimate(FiniteLatticeSet(pts, 1), LatticeBox::cube(1, 0, 256), 16) == 1.0);
  }
  SUBCASE("2d block") {
    std::vector<LatticePoint> pts;
    for (std::int64_t x = 3; x < 7; ++x) {
      for (std::int64_t y = 5; y < 9; ++y) pts.emplace_back(x, y);
    }
    CHECK(banach_density_estimate(FiniteLatticeSet(pts, 2), LatticeBox::cube(2, 0, 16), 4) == 1.0);
    CHECK(banach_density_estimate(FiniteLatticeSet(pts, 2), LatticeBox::cube(2, 0, 16), 8) ==
          doctest::Approx(16.0 / 64.0));
  }
}

TEST_CASE("limsup_over_h finite proxy") {
  std::vector<double> decay;
  for (int h = 1; h <= 1000; ++h) decay.push_back(1.0 / h);
  CHECK(limsup_over_h(decay, 100) == doctest::Approx(1.0 / 101.0));

  CHECK(limsup_over_h(std::vector<double>(50, 0.7), 10) == doctest::Approx(0.7));

  std::vector<double> alternating;
  for (int h = 0; h < 100; ++h) alternating.push_back(h % 2 ? 1.0 : 0.0);
  CHECK(limsup_over_h(alternating, 20) == 1.0);

  CHECK_THROWS_AS(limsup_over_h(decay, 1000), std::invalid_argument);
}

TEST_CASE("nested-average stability: |avg_E - avg_E'| < 2 M delta") {
  SeededRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const double m = 0.25 + 4.0 * rng.uniform01();
    const double delta = 0.02 + 0.5 * rng.uniform01();
    const std::int64_t n = 40 + static_cast<std::int64_t>(rng.uniform_below(200));
    SequenceWindow w(LatticeBox::cube(1, 0, n), ValueDomain::disc(m), Complex(0.0, 0.0));
    for (std::int64_t i = 0; i < n; ++i) {
      const double r = m * std::sqrt(rng.uniform01());
      const double th = rng.uniform_angle();
      w.set(LatticePoint(i), Complex(r * std::cos(th), r * std::sin(th)));
    }
    // E = the window, E' drops strictly fewer than delta*|E| points.
    const auto max_drop = static_cast<std::uint64_t>(delta * static_cast<double>(n));
    const std::uint64_t drop = max_drop == 0 ? 0 : rng.uniform_below(max_drop);
    std::vector<LatticePoint> kept;
    std::vector<bool> dropped(static_cast<std::size_t>(n), false);
    for (std::uint64_t d = 0; d < drop; ++d) {
      dropped[static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(n)))] = true;
    }
    for (std::int64_t i = 0; i < n; ++i) {
      if (!dropped[static_cast<std::size_t>(i)]) kept.emplace_back(i);
    }
    const FiniteLatticeSet e = range_1d(0, n);
    const FiniteLatticeSet e_prime(kept, 1);
    REQUIRE(static_cast<double>(e.size() - e_prime.size()) / static_cast<double>(e.size()) < delta);
    const Complex diff = cesaro_mean(w, e) - cesaro_mean(w, e_prime);
    CHECK(std::abs(diff) < 2.0 * m * delta);
  }
}
