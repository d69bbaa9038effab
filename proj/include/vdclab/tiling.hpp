#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vdclab/lattice.hpp"
#include "vdclab/window.hpp"

namespace vdclab {

// Dyadic tiling of Z^d at level k: shape [0, 2^k)^d, centers 2^k * Z^d.
// Origin is in the shape; tiles partition Z^d; level k+1 tiles decompose
// exactly into 2^d level-k tiles.
struct Tiling {
  int k = 0;
  int dim = 1;

  std::int64_t side() const { return std::int64_t{1} << k; }
  LatticeBox shape_region() const { return LatticeBox::cube(dim, 0, side()); }
  FiniteLatticeSet shape() const { return FiniteLatticeSet::from_box(shape_region()); }
  // Center of the tile containing p (floor division to the 2^k grid).
  LatticePoint tile_center_of(const LatticePoint& p) const;
  LatticeBox tile_region(const LatticePoint& center) const;
};

Tiling dyadic_tiling(int k, int dim);

// Union of all tiles meeting both B and its complement.
FiniteLatticeSet tiling_boundary(const Tiling& t, const FiniteLatticeSet& b);
// Same, returning the straddling centers only.
std::vector<LatticePoint> tiling_boundary_centers(const Tiling& t, const FiniteLatticeSet& b);

// Levels k_1 < k_2 < ... of dyadic tilings. Congruency between consecutive
// levels holds by construction; verify_congruency checks one tile per pair.
struct CongruentFamily {
  int dim = 1;
  std::vector<int> levels;

  static CongruentFamily dyadic(int dim, std::vector<int> levels);
  Tiling tiling(std::size_t level_index) const;
  std::size_t level_count() const { return levels.size(); }
  bool verify_congruency() const;
};

struct TileRef {
  std::size_t level_index = 0;  // index into the family's levels
  LatticePoint center;
};

struct PartitionTraceRow {
  std::int64_t n = 0;          // Folner index
  std::int64_t covered = 0;    // |A_N|
  std::int64_t total = 0;      // |F_N|
  double fraction = 0.0;       // |A_N| / |F_N|
};

// Partition of the horizon window into tiles of the family, finitely many
// per level, with |A_N|/|F_N| climbing toward 1.
struct TilePartition {
  CongruentFamily family;
  FolnerPlan plan;
  std::int64_t n_max = 0;
  std::vector<TileRef> tiles;
  std::vector<std::int64_t> thresholds;      // N_k schedule actually used
  std::vector<PartitionTraceRow> trace;      // per-N covered fractions
  std::vector<std::size_t> per_level_count;  // tiles per level

  // |A_N|/|F_N| for one N (tiles fully inside F_N).
  double covered_fraction(std::int64_t n) const;
};

// Default schedule: N_k = smallest N with |d_{k+1} F_N| / |F_N| <= 1/(k+1),
// where d_j B is the union of the straddling-tile boundaries of levels <= j.
std::vector<std::int64_t> default_threshold_schedule(const CongruentFamily& family,
                                                     const FolnerPlan& plan, std::int64_t n_max);

TilePartition congruent_partition(const CongruentFamily& family, const FolnerPlan& plan,
                                  std::int64_t n_max, const std::vector<std::int64_t>& thresholds);
TilePartition congruent_partition(const CongruentFamily& family, const FolnerPlan& plan,
                                  std::int64_t n_max);

// Places each tile's assigned block (a window over the tile's shape, origin
// at zero) at the tile's center; everything else in `target_region` becomes
// `fill`. Throws CoverageError if a block does not cover its shape.
SequenceWindow assemble_blocks(const TilePartition& partition,
                               const std::function<const SequenceWindow&(const TileRef&)>& assignment,
                               Complex fill, const ValueDomain& domain,
                               const LatticeBox& target_region);
SequenceWindow assemble_blocks(const TilePartition& partition,
                               const std::function<const SequenceWindow&(const TileRef&)>& assignment,
                               Complex fill, const ValueDomain& domain);

}  // namespace vdclab
