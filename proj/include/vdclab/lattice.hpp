#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace vdclab {

inline constexpr int kMaxDim = 3;

// Coordinates are kept well inside the packable range so that point sets can
// hash them into a single 64-bit key (21 bits per axis).
inline constexpr std::int64_t kMaxCoord = (std::int64_t{1} << 20) - 1;

// A point of Z^d, d in {1,2,3}. Unused axes are zero.
struct LatticePoint {
  std::array<std::int64_t, kMaxDim> c{0, 0, 0};
  int dim = 1;

  LatticePoint() = default;
  explicit LatticePoint(std::int64_t x) : c{x, 0, 0}, dim(1) {}
  LatticePoint(std::int64_t x, std::int64_t y) : c{x, y, 0}, dim(2) {}
  LatticePoint(std::int64_t x, std::int64_t y, std::int64_t z) : c{x, y, z}, dim(3) {}
  static LatticePoint zero(int dim);

  std::int64_t operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator-() const;
  bool operator==(const LatticePoint& o) const { return dim == o.dim && c == o.c; }
  bool operator<(const LatticePoint& o) const { return c < o.c; }

  std::uint64_t packed() const;
  std::string to_string() const;
};

// Axis-aligned half-open box prod_i [lo_i, hi_i). Empty if any hi_i <= lo_i.
struct LatticeBox {
  std::array<std::int64_t, kMaxDim> lo{0, 0, 0};
  std::array<std::int64_t, kMaxDim> hi{0, 0, 0};
  int dim = 1;

  static LatticeBox cube(int dim, std::int64_t lo, std::int64_t hi);

  bool contains(const LatticePoint& p) const;
  bool empty() const;
  std::int64_t volume() const;
  std::int64_t side(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]; }
  // Row-major offset of p; caller guarantees contains(p).
  std::size_t index_of(const LatticePoint& p) const;
  LatticePoint point_at(std::size_t index) const;
  LatticeBox translated(const LatticePoint& t) const;
  // Smallest box containing both (for compatible dims).
  LatticeBox hull(const LatticeBox& other) const;
  bool operator==(const LatticeBox& o) const;
};

// Finite subset of Z^d: sorted point list plus a packed-key hash for O(1)
// membership. Immutable after construction.
class FiniteLatticeSet {
 public:
  FiniteLatticeSet() = default;
  explicit FiniteLatticeSet(int dim) : dim_(dim) {}
  FiniteLatticeSet(std::vector<LatticePoint> points, int dim);

  static FiniteLatticeSet from_box(const LatticeBox& box);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const LatticePoint& p) const;
  const std::vector<LatticePoint>& points() const { return points_; }

  FiniteLatticeSet translated(const LatticePoint& t) const;
  FiniteLatticeSet set_union(const FiniteLatticeSet& other) const;
  FiniteLatticeSet set_difference(const FiniteLatticeSet& other) const;
  FiniteLatticeSet set_intersection(const FiniteLatticeSet& other) const;
  std::size_t symmetric_difference_size(const FiniteLatticeSet& other) const;
  // Bounding box (one-past-max on each axis); undefined on empty sets.
  LatticeBox bounding_box() const;

  bool operator==(const FiniteLatticeSet& o) const { return dim_ == o.dim_ && points_ == o.points_; }

 private:
  std::vector<LatticePoint> points_;
  std::unordered_set<std::uint64_t> keys_;
  int dim_ = 1;
};

enum class BoxStyle { Anchored, Centered };

// A box Folner family: F_N is the cube of side(N) anchored at the origin or
// centered on it. side must be strictly increasing with side(1) >= 1.
struct FolnerPlan {
  int dim = 1;
  BoxStyle style = BoxStyle::Anchored;
  std::function<std::int64_t(std::int64_t)> side = [](std::int64_t n) { return n; };
  std::string side_desc = "N";

  static FolnerPlan boxes(int dim, BoxStyle style = BoxStyle::Anchored);
};

LatticeBox folner_box_region(const FolnerPlan& plan, std::int64_t n);
FiniteLatticeSet folner_box(const FolnerPlan& plan, std::int64_t n);

// { g : (S+g) meets T and (S+g) is not contained in T }.
FiniteLatticeSet boundary_set(const FiniteLatticeSet& s, const FiniteLatticeSet& t);

// |boundary_set(S, F)| / |F|.
double invariance_ratio(const FiniteLatticeSet& s, const FiniteLatticeSet& f);

// Exact |boundary_set(S, box)| for an axis-aligned box, via the product
// formula prod(side + r_i) - prod(max(side - r_i, 0)) with r_i the coordinate
// spread of S on axis i.
std::int64_t box_boundary_size(const FiniteLatticeSet& s, const LatticeBox& box);

}  // namespace vdclab
