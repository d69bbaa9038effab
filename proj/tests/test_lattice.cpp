#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vdclab/lattice.hpp"
#include "vdclab/rng.hpp"

using namespace vdclab;

namespace {

// Independent oracle: enumerate all g in a padded range and test the
// definition of the boundary directly.
FiniteLatticeSet boundary_oracle(const FiniteLatticeSet& s, const FiniteLatticeSet& t) {
  const LatticeBox tb = t.bounding_box();
  const LatticeBox sb = s.bounding_box();
  LatticeBox probe = tb;
  for (int i = 0; i < tb.dim; ++i) {
    probe.lo[i] = tb.lo[i] - sb.hi[i] - 1;
    probe.hi[i] = tb.hi[i] - sb.lo[i] + 1;
  }
  std::vector<LatticePoint> out;
  for (std::int64_t idx = 0; idx < probe.volume(); ++idx) {
    const LatticePoint g = probe.point_at(static_cast<std::size_t>(idx));
    bool meets = false;
    bool escapes = false;
    for (const auto& sp : s.points()) {
      if (t.contains(sp + g)) {
        meets = true;
      } else {
        escapes = true;
      }
    }
    if (meets && escapes) out.push_back(g);
  }
  return FiniteLatticeSet(std::move(out), t.dim());
}

FiniteLatticeSet range_1d(std::int64_t lo, std::int64_t hi) {
  return FiniteLatticeSet::from_box(LatticeBox::cube(1, lo, hi));
}

}  // namespace

TEST_CASE("folner boxes") {
  const FolnerPlan plan = FolnerPlan::boxes(1);
  const auto f3 = folner_box(plan, 3);
  CHECK(f3.size() == 3);
  CHECK(f3.contains(LatticePoint(0)));
  CHECK(f3.contains(LatticePoint(2)));
  CHECK_FALSE(f3.contains(LatticePoint(3)));

  const FolnerPlan plan2 = FolnerPlan::boxes(2);
  const auto f2 = folner_box(plan2, 2);
  CHECK(f2.size() == 4);
  CHECK(f2.contains(LatticePoint(1, 1)));
  CHECK_FALSE(f2.contains(LatticePoint(2, 0)));

  const FolnerPlan centered = FolnerPlan::boxes(1, BoxStyle::Centered);
  const auto c5 = folner_box(centered, 5);
  CHECK(c5.size() == 5);
  CHECK(c5.contains(LatticePoint(-2)));
  CHECK(c5.contains(LatticePoint(2)));
}

TEST_CASE("translate invariance of box families") {
  // |F_N symdiff (F_N + h)| / |F_N| for d=1, h=1, N=100 equals 2/100.
  const auto f = range_1d(0, 100);
  const auto shifted = f.translated(LatticePoint(1));
  CHECK(f.symmetric_difference_size(shifted) == 2);
}

TEST_CASE("boundary_set matches the enumeration oracle on the pinned examples") {
  const auto t = range_1d(0, 10);

  SUBCASE("singleton S never straddles") {
    const FiniteLatticeSet s({LatticePoint(0)}, 1);
    CHECK(boundary_set(s, t).empty());
  }
  SUBCASE("S = {0,1}") {
    const FiniteLatticeSet s({LatticePoint(0), LatticePoint(1)}, 1);
    const auto expected = FiniteLatticeSet({LatticePoint(-1), LatticePoint(9)}, 1);
    CHECK(boundary_set(s, t) == expected);
    CHECK(boundary_oracle(s, t) == expected);
  }
  SUBCASE("S = {-1,0,1}") {
    const FiniteLatticeSet s({LatticePoint(-1), LatticePoint(0), LatticePoint(1)}, 1);
    const auto expected =
        FiniteLatticeSet({LatticePoint(-1), LatticePoint(0), LatticePoint(9), LatticePoint(10)}, 1);
    CHECK(boundary_set(s, t) == expected);
    CHECK(boundary_oracle(s, t) == expected);
  }
}

TEST_CASE("boundary_set translation equivariance") {
  SeededRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LatticePoint> spts, tpts;
    for (int i = 0; i < 3; ++i) {
      spts.emplace_back(static_cast<std::int64_t>(rng.uniform_below(5)) - 2);
    }
    for (int i = 0; i < 12; ++i) {
      tpts.emplace_back(static_cast<std::int64_t>(rng.uniform_below(30)));
    }
    const FiniteLatticeSet s(spts, 1);
    const FiniteLatticeSet t(tpts, 1);
    const LatticePoint c(static_cast<std::int64_t>(rng.uniform_below(20)) - 10);
    CHECK(boundary_set(s, t.translated(c)) == boundary_set(s, t).translated(c));
  }
}

TEST_CASE("interior points keep their S-translate inside T") {
  SeededRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LatticePoint> spts{LatticePoint(0)};
    for (int i = 0; i < 2; ++i) {
      spts.emplace_back(static_cast<std::int64_t>(rng.uniform_below(7)) - 3);
    }
    const FiniteLatticeSet s(spts, 1);
    const auto t = range_1d(0, 24);
    const auto boundary = boundary_set(s, t);
    for (const auto& g : t.points()) {
      if (boundary.contains(g)) continue;
      for (const auto& sp : s.points()) {
        CHECK(t.contains(sp + g));
      }
    }
  }
}

TEST_CASE("invariance_ratio") {
  const FiniteLatticeSet s01({LatticePoint(0), LatticePoint(1)}, 1);
  CHECK(invariance_ratio(s01, range_1d(0, 100)) == doctest::Approx(0.02));

  const FiniteLatticeSet origin({LatticePoint(0)}, 1);
  CHECK(invariance_ratio(origin, range_1d(0, 17)) == 0.0);

  // d=2 cross-check against boundary_set.
  std::vector<LatticePoint> square_pts;
  for (std::int64_t x = 0; x <= 1; ++x) {
    for (std::int64_t y = 0; y <= 1; ++y) square_pts.emplace_back(x, y);
  }
  const FiniteLatticeSet square(square_pts, 2);
  const auto f = FiniteLatticeSet::from_box(LatticeBox::cube(2, 0, 10));
  const double ratio = invariance_ratio(square, f);
  CHECK(ratio == doctest::Approx(static_cast<double>(boundary_set(square, f).size()) / 100.0));
  CHECK(ratio == doctest::Approx(static_cast<double>(box_boundary_size(square, f.bounding_box())) / 100.0));
}

TEST_CASE("box boundary ratios vanish along the box family") {
  const FiniteLatticeSet s({LatticePoint(0), LatticePoint(1)}, 1);
  const FolnerPlan plan = FolnerPlan::boxes(1);
  double prev = 1.0;
  for (const std::int64_t n : {10, 100, 1000}) {
    const double r = invariance_ratio(s, folner_box(plan, n));
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev == doctest::Approx(2.0 / 1000.0));
}

TEST_CASE("box_boundary_size agrees with boundary_set on random boxes") {
  SeededRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_below(2));
    std::vector<LatticePoint> spts;
    for (int i = 0; i < 3; ++i) {
      LatticePoint p = LatticePoint::zero(dim);
      for (int ax = 0; ax < dim; ++ax) {
        p.c[ax] = static_cast<std::int64_t>(rng.uniform_below(4)) - 2;
      }
      spts.push_back(p);
    }
    const FiniteLatticeSet s(spts, dim);
    const LatticeBox box = LatticeBox::cube(dim, 0, 6 + static_cast<std::int64_t>(rng.uniform_below(6)));
    CHECK(box_boundary_size(s, box) ==
          static_cast<std::int64_t>(boundary_set(s, FiniteLatticeSet::from_box(box)).size()));
  }
}
