#include "vdclab/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "vdclab/errors.hpp"

namespace vdclab {

namespace {

std::int64_t floor_div_pow2(std::int64_t x, int k) {
  return x >> k;  // arithmetic shift: floor division for powers of two
}

void check_level(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("dyadic tiling level must be in [0, 20]");
}

}  // namespace

LatticePoint Tiling::tile_center_of(const LatticePoint& p) const {
  LatticePoint c = LatticePoint::zero(dim);
  for (int i = 0; i < dim; ++i) {
    c.c[i] = floor_div_pow2(p.c[i], k) << k;
  }
  return c;
}

LatticeBox Tiling::tile_region(const LatticePoint& center) const {
  LatticeBox b;
  b.dim = dim;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] = center.c[i];
    b.hi[i] = center.c[i] + side();
  }
  return b;
}

Tiling dyadic_tiling(int k, int dim) {
  check_level(k);
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("tiling dimension must be 1, 2 or 3");
  return Tiling{k, dim};
}

std::vector<LatticePoint> tiling_boundary_centers(const Tiling& t, const FiniteLatticeSet& b) {
  std::vector<LatticePoint> centers;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& p : b.points()) {
    const LatticePoint c = t.tile_center_of(p);
    if (!seen.insert(c.packed()).second) continue;
    // The tile meets B at p; it straddles iff it is not contained in B.
    const LatticeBox region = t.tile_region(c);
    bool inside = static_cast<std::size_t>(region.volume()) <= b.size();
    if (inside) {
      for (std::int64_t i = 0; i < region.volume() && inside; ++i) {
        inside = b.contains(region.point_at(static_cast<std::size_t>(i)));
      }
    }
    if (!inside) centers.push_back(c);
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

FiniteLatticeSet tiling_boundary(const Tiling& t, const FiniteLatticeSet& b) {
  std::vector<LatticePoint> pts;
  for (const auto& c : tiling_boundary_centers(t, b)) {
    const LatticeBox region = t.tile_region(c);
    for (std::int64_t i = 0; i < region.volume(); ++i) {
      pts.push_back(region.point_at(static_cast<std::size_t>(i)));
    }
  }
  return FiniteLatticeSet(std::move(pts), b.dim());
}

CongruentFamily CongruentFamily::dyadic(int dim, std::vector<int> levels) {
  if (levels.empty()) throw std::invalid_argument("congruent family needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    check_level(levels[i]);
    if (i && levels[i] <= levels[i - 1]) {
      throw std::invalid_argument("congruent family levels must be strictly increasing");
    }
  }
  CongruentFamily fam;
  fam.dim = dim;
  fam.levels = std::move(levels);
  return fam;
}

Tiling CongruentFamily::tiling(std::size_t level_index) const {
  return dyadic_tiling(levels.at(level_index), dim);
}

bool CongruentFamily::verify_congruency() const {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const Tiling fine = tiling(i);
    const Tiling coarse = tiling(i + 1);
    // One coarse tile (at a nonzero center, to exercise the center lattice)
    // must decompose exactly into fine tiles.
    LatticePoint c = LatticePoint::zero(dim);
    c.c[0] = coarse.side() * 3;
    const LatticeBox region = coarse.tile_region(c);
    std::int64_t fine_cells = 0;
    for (std::int64_t idx = 0; idx < region.volume(); ++idx) {
      const LatticePoint p = region.point_at(static_cast<std::size_t>(idx));
      const LatticePoint fc = fine.tile_center_of(p);
      if (!region.contains(fc)) return false;
      const LatticeBox fr = fine.tile_region(fc);
      for (int ax = 0; ax < dim; ++ax) {
        if (fr.lo[ax] < region.lo[ax] || fr.hi[ax] > region.hi[ax]) return false;
      }
      if (p == fc) ++fine_cells;
    }
    const std::int64_t expected = region.volume() / fine.tile_region(LatticePoint::zero(dim)).volume();
    if (fine_cells != expected) return false;
  }
  return true;
}

namespace {

// Number of level-k tiles meeting / contained in a box, per construction of
// dyadic tilings (exact, per-axis counting).
std::int64_t straddling_tile_points(const Tiling& t, const LatticeBox& box) {
  if (box.empty()) return 0;
  std::int64_t meets = 1;
  std::int64_t inside = 1;
  const std::int64_t s = t.side();
  for (int i = 0; i < box.dim; ++i) {
    const std::int64_t first = floor_div_pow2(box.lo[i], t.k);
    const std::int64_t last = floor_div_pow2(box.hi[i] - 1, t.k);
    meets *= last - first + 1;
    const std::int64_t in_first = (box.lo[i] + s - 1) >> t.k;  // ceil division
    const std::int64_t in_last = floor_div_pow2(box.hi[i], t.k) - 1;
    inside *= std::max<std::int64_t>(in_last - in_first + 1, 0);
  }
  std::int64_t tile_vol = 1;
  for (int i = 0; i < box.dim; ++i) tile_vol *= s;
  return (meets - inside) * tile_vol;
}

std::vector<LatticePoint> tiles_meeting_box(const Tiling& t, const LatticeBox& box) {
  std::vector<LatticePoint> centers;
  if (box.empty()) return centers;
  std::array<std::int64_t, kMaxDim> first{0, 0, 0};
  std::array<std::int64_t, kMaxDim> count{1, 1, 1};
  for (int i = 0; i < box.dim; ++i) {
    first[i] = floor_div_pow2(box.lo[i], t.k);
    count[i] = floor_div_pow2(box.hi[i] - 1, t.k) - first[i] + 1;
  }
  for (std::int64_t x = 0; x < count[0]; ++x) {
    for (std::int64_t y = 0; y < count[1]; ++y) {
      for (std::int64_t z = 0; z < count[2]; ++z) {
        LatticePoint c = LatticePoint::zero(box.dim);
        c.c[0] = (first[0] + x) << t.k;
        if (box.dim >= 2) c.c[1] = (first[1] + y) << t.k;
        if (box.dim >= 3) c.c[2] = (first[2] + z) << t.k;
        centers.push_back(c);
      }
    }
  }
  return centers;
}

bool region_inside(const LatticeBox& inner, const LatticeBox& outer) {
  for (int i = 0; i < inner.dim; ++i) {
    if (inner.lo[i] < outer.lo[i] || inner.hi[i] > outer.hi[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<std::int64_t> default_threshold_schedule(const CongruentFamily& family,
                                                     const FolnerPlan& plan, std::int64_t n_max) {
  const std::size_t nlevels = family.level_count();
  std::vector<std::int64_t> thresholds;
  if (nlevels <= 1) return thresholds;
  // ratio_k(N) = |d_{k+1} F_N| / |F_N|. Straddling tiles of finer levels sit
  // inside straddling tiles of coarser ones, so the union over levels <= k+1
  // is the level-(k+1) straddle set alone.
  for (std::size_t k = 1; k < nlevels; ++k) {
    const Tiling coarse = family.tiling(k);
    std::vector<double> ratio(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const LatticeBox f = folner_box_region(plan, n);
      ratio[static_cast<std::size_t>(n)] =
          static_cast<double>(straddling_tile_points(coarse, f)) / static_cast<double>(f.volume());
    }
    // smallest N with ratio(N') <= 1/(k+1) for every N' in [N, n_max]
    const double target = 1.0 / static_cast<double>(k + 1);
    std::int64_t best = n_max;
    double suffix_max = 0.0;
    for (std::int64_t n = n_max; n >= 1; --n) {
      suffix_max = std::max(suffix_max, ratio[static_cast<std::size_t>(n)]);
      if (suffix_max <= target) best = n;
    }
    thresholds.push_back(best);
  }
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    thresholds[i] = std::max(thresholds[i], thresholds[i - 1]);
  }
  return thresholds;
}

TilePartition congruent_partition(const CongruentFamily& family, const FolnerPlan& plan,
                                  std::int64_t n_max) {
  return congruent_partition(family, plan, n_max, default_threshold_schedule(family, plan, n_max));
}

TilePartition congruent_partition(const CongruentFamily& family, const FolnerPlan& plan,
                                  std::int64_t n_max, const std::vector<std::int64_t>& thresholds) {
  TilePartition part;
  part.family = family;
  part.plan = plan;
  part.n_max = n_max;
  part.per_level_count.assign(family.level_count(), 0);
  if (n_max <= 0) return part;

  if (thresholds.size() + 1 != family.level_count()) {
    throw ScheduleError("threshold schedule must have one entry per level transition");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 1) throw ScheduleError("threshold indices must be >= 1");
    if (i && thresholds[i] < thresholds[i - 1]) {
      throw ScheduleError("threshold schedule must be nondecreasing");
    }
  }
  part.thresholds = thresholds;
  for (auto& t : part.thresholds) t = std::min(t, n_max);

  const LatticeBox universe = folner_box_region(plan, n_max);
  const Tiling finest = family.tiling(0);
  if (finest.side() > universe.side(0)) {
    throw ScheduleError("smallest tiling level does not fit inside the horizon window");
  }

  // Assigned region, tracked as finest-level tile centers. Region growth is
  // all-or-nothing in finest tiles because every D_k is a union of them.
  std::unordered_set<std::uint64_t> assigned;
  const auto finest_centers_of = [&](const LatticeBox& region, std::vector<LatticePoint>& out) {
    for (const auto& c : tiles_meeting_box(finest, region)) out.push_back(c);
  };
  const auto tile_assigned = [&](const LatticeBox& region) {
    // Representative check: regions are unions of finest tiles.
    const LatticePoint c = finest.tile_center_of(region.point_at(0));
    return assigned.count(c.packed()) > 0;
  };

  const std::size_t nlevels = family.level_count();
  for (std::size_t li = 0; li < nlevels; ++li) {
    const Tiling level = family.tiling(li);
    std::vector<LatticePoint> candidate_centers;
    if (li + 1 < nlevels) {
      const Tiling parent = family.tiling(li + 1);
      const LatticeBox f = folner_box_region(plan, part.thresholds[li]);
      for (const auto& pc : tiles_meeting_box(parent, f)) {
        const LatticeBox pr = parent.tile_region(pc);
        if (!region_inside(pr, universe)) continue;
        for (const auto& sc : tiles_meeting_box(level, pr)) candidate_centers.push_back(sc);
      }
    } else {
      for (const auto& sc : tiles_meeting_box(level, universe)) {
        if (region_inside(level.tile_region(sc), universe)) candidate_centers.push_back(sc);
      }
    }
    std::sort(candidate_centers.begin(), candidate_centers.end());
    for (const auto& c : candidate_centers) {
      const LatticeBox region = level.tile_region(c);
      if (!region_inside(region, universe)) continue;
      if (tile_assigned(region)) continue;
      part.tiles.push_back(TileRef{li, c});
      ++part.per_level_count[li];
      std::vector<LatticePoint> fine;
      finest_centers_of(region, fine);
      for (const auto& fc : fine) assigned.insert(fc.packed());
    }
  }

  // Per-N coverage trace on a dyadic ladder plus the schedule's landmarks.
  std::vector<std::int64_t> ladder;
  for (std::int64_t n = 1; n <= n_max; n *= 2) ladder.push_back(n);
  for (const auto t : part.thresholds) ladder.push_back(t);
  ladder.push_back(n_max);
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  for (const auto n : ladder) {
    PartitionTraceRow row;
    row.n = n;
    const LatticeBox f = folner_box_region(plan, n);
    row.total = f.volume();
    for (const auto& tile : part.tiles) {
      const LatticeBox r = family.tiling(tile.level_index).tile_region(tile.center);
      if (region_inside(r, f)) row.covered += r.volume();
    }
    row.fraction = static_cast<double>(row.covered) / static_cast<double>(row.total);
    part.trace.push_back(row);
  }
  return part;
}

double TilePartition::covered_fraction(std::int64_t n) const {
  const LatticeBox f = folner_box_region(plan, n);
  std::int64_t covered = 0;
  for (const auto& tile : tiles) {
    const LatticeBox r = family.tiling(tile.level_index).tile_region(tile.center);
    if (region_inside(r, f)) covered += r.volume();
  }
  return static_cast<double>(covered) / static_cast<double>(f.volume());
}

SequenceWindow assemble_blocks(const TilePartition& partition,
                               const std::function<const SequenceWindow&(const TileRef&)>& assignment,
                               Complex fill, const ValueDomain& domain) {
  if (partition.tiles.empty()) {
    return SequenceWindow(LatticeBox::cube(partition.family.dim, 0, 1), domain, fill);
  }
  LatticeBox region = partition.family.tiling(partition.tiles.front().level_index)
                          .tile_region(partition.tiles.front().center);
  for (const auto& tile : partition.tiles) {
    region = region.hull(partition.family.tiling(tile.level_index).tile_region(tile.center));
  }
  return assemble_blocks(partition, assignment, fill, domain, region);
}

SequenceWindow assemble_blocks(const TilePartition& partition,
                               const std::function<const SequenceWindow&(const TileRef&)>& assignment,
                               Complex fill, const ValueDomain& domain,
                               const LatticeBox& target_region) {
  SequenceWindow out(target_region, domain, fill);
  for (const auto& tile : partition.tiles) {
    const Tiling level = partition.family.tiling(tile.level_index);
    const LatticeBox tile_region = level.tile_region(tile.center);
    if (!region_inside(tile_region, target_region)) {
      throw CoverageError("assembled region does not contain tile at " + tile.center.to_string());
    }
    const SequenceWindow& block = assignment(tile);
    const LatticeBox shape = level.shape_region();
    if (!region_inside(shape, block.region())) {
      throw CoverageError("assigned block does not cover the tile shape of side " +
                          std::to_string(level.side()));
    }
    for (std::int64_t idx = 0; idx < shape.volume(); ++idx) {
      const LatticePoint u = shape.point_at(static_cast<std::size_t>(idx));
      out.set(tile.center + u, block.at(u));
    }
  }
  return out;
}

}  // namespace vdclab
