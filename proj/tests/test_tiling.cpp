#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <unordered_set>

#include "vdclab/averaging.hpp"
#include "vdclab/errors.hpp"
#include "vdclab/lattice.hpp"
#include "vdclab/rng.hpp"
#include "vdclab/tiling.hpp"

using namespace vdclab;

TEST_CASE("dyadic tiles") {
  const Tiling t1 = dyadic_tiling(1, 1);
  CHECK(t1.shape() == FiniteLatticeSet({LatticePoint(0), LatticePoint(1)}, 1));
  CHECK(t1.tile_center_of(LatticePoint(5)) == LatticePoint(4));
  CHECK(t1.tile_center_of(LatticePoint(-1)) == LatticePoint(-2));

  const Tiling t0 = dyadic_tiling(0, 1);
  CHECK(t0.shape().size() == 1);
  CHECK(t0.tile_center_of(LatticePoint(7)) == LatticePoint(7));

  const Tiling t22 = dyadic_tiling(2, 2);
  const LatticePoint c = t22.tile_center_of(LatticePoint(7, 2));
  CHECK(c == LatticePoint(4, 0));
  const LatticeBox r = t22.tile_region(c);
  CHECK(r.lo[0] == 4);
  CHECK(r.hi[0] == 8);
  CHECK(r.lo[1] == 0);
  CHECK(r.hi[1] == 4);

  CHECK_THROWS_AS(dyadic_tiling(21, 1), std::invalid_argument);
}

TEST_CASE("tiling_boundary") {
  const Tiling t = dyadic_tiling(2, 1);  // shape {0..3}
  SUBCASE("a full tile never straddles") {
    CHECK(tiling_boundary(t, FiniteLatticeSet::from_box(LatticeBox::cube(1, 4, 8))).empty());
  }
  SUBCASE("only the straddling tile is returned") {
    const auto b = FiniteLatticeSet::from_box(LatticeBox::cube(1, 0, 10));
    const auto boundary = tiling_boundary(t, b);
    CHECK(boundary == FiniteLatticeSet::from_box(LatticeBox::cube(1, 8, 12)));
  }
  SUBCASE("empty set") {
    CHECK(tiling_boundary(t, FiniteLatticeSet(1)).empty());
  }
}

TEST_CASE("congruent families nest exactly") {
  const auto fam = CongruentFamily::dyadic(2, {1, 2, 4});
  CHECK(fam.verify_congruency());

  // Every level-(i+1) tile decomposes into 2^{(k_{i+1}-k_i) d} level-i tiles.
  for (std::size_t i = 0; i + 1 < fam.level_count(); ++i) {
    const Tiling fine = fam.tiling(i);
    const Tiling coarse = fam.tiling(i + 1);
    LatticePoint center = LatticePoint::zero(2);
    center.c[0] = -3 * coarse.side();
    center.c[1] = 2 * coarse.side();
    const LatticeBox region = coarse.tile_region(center);
    std::unordered_set<std::uint64_t> fine_centers;
    for (std::int64_t idx = 0; idx < region.volume(); ++idx) {
      const LatticePoint p = region.point_at(static_cast<std::size_t>(idx));
      const LatticePoint fc = fine.tile_center_of(p);
      CHECK(region.contains(fc));
      fine_centers.insert(fc.packed());
    }
    const auto expected = static_cast<std::size_t>(region.volume() / (fine.side() * fine.side()));
    CHECK(fine_centers.size() == expected);
  }
}

TEST_CASE("congruent_partition") {
  SUBCASE("window equal to one tile") {
    const auto fam = CongruentFamily::dyadic(1, {3});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 8);
    REQUIRE(part.tiles.size() == 1);
    CHECK(part.tiles[0].center == LatticePoint(0));
    CHECK(part.covered_fraction(8) == 1.0);
  }
  SUBCASE("default schedule covers a dyadic horizon; fractions climb") {
    const auto fam = CongruentFamily::dyadic(1, {4, 6, 8});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 4096);
    // Partition property: pairwise disjoint genuine tiles.
    std::unordered_set<std::int64_t> covered;
    for (const auto& tile : part.tiles) {
      const Tiling level = fam.tiling(tile.level_index);
      CHECK(level.tile_center_of(tile.center) == tile.center);
      const LatticeBox r = level.tile_region(tile.center);
      for (std::int64_t x = r.lo[0]; x < r.hi[0]; ++x) {
        CHECK(covered.insert(x).second);
      }
    }
    CHECK(covered.size() == 4096);  // dyadic-aligned horizon is covered exactly
    CHECK(part.covered_fraction(4096) == 1.0);
    CHECK(part.covered_fraction(4096) >= 0.9);  // the pinned N = 2^12 bound
    double prev = 0.0;
    for (const auto& row : part.trace) {
      CHECK(row.fraction >= prev - 1e-12);
      CHECK(row.covered <= row.total);  // A_N inside F_N
      prev = row.fraction;
    }
    // Finitely many per level, all levels accounted for.
    std::size_t total = 0;
    for (const auto c : part.per_level_count) total += c;
    CHECK(total == part.tiles.size());
  }
  SUBCASE("empty window") {
    const auto fam = CongruentFamily::dyadic(1, {2});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 0);
    CHECK(part.tiles.empty());
  }
  SUBCASE("schedule errors") {
    const auto fam = CongruentFamily::dyadic(1, {2, 3});
    CHECK_THROWS_AS(congruent_partition(fam, FolnerPlan::boxes(1), 64, {32, 16}), ScheduleError);
    CHECK_THROWS_AS(congruent_partition(fam, FolnerPlan::boxes(1), 64, {16, 32, 48}), ScheduleError);
    const auto big = CongruentFamily::dyadic(1, {8});
    CHECK_THROWS_AS(congruent_partition(big, FolnerPlan::boxes(1), 64), ScheduleError);
  }
}

namespace {

SequenceWindow constant_block(int k, int dim, Complex value, const ValueDomain& domain) {
  return SequenceWindow(LatticeBox::cube(dim, 0, std::int64_t{1} << k), domain, value);
}

}  // namespace

TEST_CASE("assemble_blocks") {
  const auto domain = ValueDomain::binary01();
  SUBCASE("two equal tiles at constants 0 and 1 average to 1/2") {
    const auto fam = CongruentFamily::dyadic(1, {3});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 16);
    REQUIRE(part.tiles.size() == 2);
    const SequenceWindow zero = constant_block(3, 1, Complex(0.0, 0.0), domain);
    const SequenceWindow one = constant_block(3, 1, Complex(1.0, 0.0), domain);
    const auto window = assemble_blocks(
        part,
        [&](const TileRef& t) -> const SequenceWindow& { return t.center.c[0] == 0 ? zero : one; },
        Complex(0.0, 0.0), domain);
    const auto f = FiniteLatticeSet::from_box(LatticeBox::cube(1, 0, 16));
    CHECK(cesaro_mean(window, f).real() == doctest::Approx(0.5));
  }
  SUBCASE("single tile, constant block, matching fill") {
    const auto fam = CongruentFamily::dyadic(1, {4});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 16);
    const SequenceWindow block = constant_block(4, 1, Complex(1.0, 0.0), domain);
    const auto window = assemble_blocks(
        part, [&](const TileRef&) -> const SequenceWindow& { return block; }, Complex(1.0, 0.0), domain);
    for (const auto& z : window.values()) CHECK(z == Complex(1.0, 0.0));
  }
  SUBCASE("weighted mean is exact over an exact tile cover") {
    // Tiles alternate between blocks of means a and b in proportion rho.
    const auto fam = CongruentFamily::dyadic(1, {2});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 32);
    REQUIRE(part.tiles.size() == 8);
    SequenceWindow block_a(LatticeBox::cube(1, 0, 4), ValueDomain::disc(), Complex(0.0, 0.0));
    SequenceWindow block_b(LatticeBox::cube(1, 0, 4), ValueDomain::disc(), Complex(0.0, 0.0));
    // means: a = 0.25, b = -0.5
    for (std::int64_t i = 0; i < 4; ++i) {
      block_a.set(LatticePoint(i), Complex(i < 2 ? 0.5 : 0.0, 0.0));
      block_b.set(LatticePoint(i), Complex(-0.5, 0.0));
    }
    int counter = 0;
    std::map<std::int64_t, bool> is_a;
    for (const auto& tile : part.tiles) is_a[tile.center.c[0]] = (counter++ % 4) != 3;  // rho = 3/4
    const auto window = assemble_blocks(
        part,
        [&](const TileRef& t) -> const SequenceWindow& {
          return is_a.at(t.center.c[0]) ? block_a : block_b;
        },
        Complex(0.0, 0.0), ValueDomain::disc());
    const auto f = FiniteLatticeSet::from_box(LatticeBox::cube(1, 0, 32));
    const double expected = 0.75 * 0.25 + 0.25 * (-0.5);
    CHECK(cesaro_mean(window, f).real() == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("short blocks are rejected") {
    const auto fam = CongruentFamily::dyadic(1, {3});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(1), 8);
    const SequenceWindow tiny = constant_block(2, 1, Complex(0.0, 0.0), domain);
    CHECK_THROWS_AS(assemble_blocks(
                        part, [&](const TileRef&) -> const SequenceWindow& { return tiny; },
                        Complex(0.0, 0.0), domain),
                    CoverageError);
  }
}

TEST_CASE("reassembly stays within 4 delta of the tile-weighted average") {
  SeededRng rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = trial % 2 == 0 ? 1 : 2;
    const int k = dim == 1 ? 5 : 3;
    const std::int64_t horizon = dim == 1 ? 256 : 32;
    const auto fam = CongruentFamily::dyadic(dim, {k});
    const auto part = congruent_partition(fam, FolnerPlan::boxes(dim), horizon);

    // Shift set S (with the origin) and a bounded star polynomial.
    const std::int64_t spread = 1 + static_cast<std::int64_t>(rng.uniform_below(2));
    CorrelationEntry e;
    e.shifts = {LatticePoint::zero(dim)};
    LatticePoint h = LatticePoint::zero(dim);
    h.c[0] = spread;
    e.shifts.push_back(h);
    const double m = 1.0;
    e.poly = StarPolynomial{2, {{Complex(0.5, 0.0), {{1, 0}, {0, 1}}},
                                {Complex(0.5, 0.0), {{1, 0}, {0, 0}}}},
                            m};

    // Hypotheses of the bound: per-tile invariance and uncovered fraction.
    const FiniteLatticeSet s(e.shifts, dim);
    const Tiling level = fam.tiling(0);
    const double tile_ratio =
        static_cast<double>(box_boundary_size(s, level.tile_region(LatticePoint::zero(dim)))) /
        static_cast<double>(level.tile_region(LatticePoint::zero(dim)).volume());

    // Drop a few tiles to make the cover proper.
    TilePartition working = part;
    const std::size_t drop = rng.uniform_below(2) + 1;
    for (std::size_t d = 0; d < drop && working.tiles.size() > 1; ++d) {
      working.tiles.erase(working.tiles.begin() +
                          static_cast<std::ptrdiff_t>(rng.uniform_below(working.tiles.size())));
    }
    const auto f_set = FiniteLatticeSet::from_box(LatticeBox::cube(dim, 0, horizon));
    double covered = 0.0;
    for (const auto& tile : working.tiles) {
      covered += static_cast<double>(fam.tiling(tile.level_index)
                                         .tile_region(tile.center)
                                         .volume());
    }
    const double uncovered_ratio = 1.0 - covered / static_cast<double>(f_set.size());
    const double delta = m * std::max(tile_ratio, uncovered_ratio) * (1.0 + rng.uniform01());

    // Random blocks per tile.
    std::map<std::uint64_t, SequenceWindow> blocks;
    for (const auto& tile : working.tiles) {
      SequenceWindow block(level.shape_region(), ValueDomain::disc(), Complex(0.0, 0.0));
      for (std::int64_t idx = 0; idx < level.shape_region().volume(); ++idx) {
        const LatticePoint u = level.shape_region().point_at(static_cast<std::size_t>(idx));
        const double r = std::sqrt(rng.uniform01());
        const double th = rng.uniform_angle();
        block.set(u, Complex(r * std::cos(th), r * std::sin(th)));
      }
      blocks.emplace(tile.center.packed(), std::move(block));
    }
    LatticeBox extended = e.needed_region(LatticeBox::cube(dim, 0, horizon))
                              .hull(LatticeBox::cube(dim, 0, horizon));
    const auto window = assemble_blocks(
        working,
        [&](const TileRef& t) -> const SequenceWindow& { return blocks.at(t.center.packed()); },
        Complex(0.0, 0.0), ValueDomain::disc(), extended);

    // Tile-weighted average of the blocks' own statistics (periodic reads
    // stay inside each block thanks to the shrunken inner evaluation set).
    const Complex assembled = cesaro_correlation(window, e, f_set);
    Complex weighted(0.0, 0.0);
    for (const auto& tile : working.tiles) {
      const auto& block = blocks.at(tile.center.packed());
      // Average of p over the tile's translated copy, reading the assembled
      // window (this is the lemma's per-tile term).
      const auto tile_set = FiniteLatticeSet::from_box(level.tile_region(tile.center));
      Complex stat(0.0, 0.0);
      const auto shape_set = FiniteLatticeSet::from_box(level.shape_region());
      std::vector<Complex> slot(2);
      for (const auto& g : shape_set.points()) {
        for (int i = 0; i < 2; ++i) {
          LatticePoint q = g + e.shifts[static_cast<std::size_t>(i)];
          for (int ax = 0; ax < dim; ++ax) {
            const std::int64_t side = level.side();
            std::int64_t v = q.c[ax] % side;
            if (v < 0) v += side;
            q.c[ax] = v;
          }
          slot[static_cast<std::size_t>(i)] = block.at(q);
        }
        stat += e.poly.eval(slot);
      }
      stat /= static_cast<double>(shape_set.size());
      weighted += (static_cast<double>(tile_set.size()) / covered) * stat;
    }
    CHECK(std::abs(assembled - weighted) <= 4.0 * delta + 1e-12);
  }
}
