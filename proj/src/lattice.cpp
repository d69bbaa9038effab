#include "vdclab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace vdclab {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("lattice dimension must be 1, 2 or 3");
  }
}

void check_coord(std::int64_t x) {
  if (x < -kMaxCoord || x > kMaxCoord) {
    throw std::out_of_range("lattice coordinate exceeds supported range");
  }
}

}  // namespace

LatticePoint LatticePoint::zero(int dim) {
  check_dim(dim);
  LatticePoint p;
  p.dim = dim;
  return p;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (int i = 0; i < dim; ++i) r.c[i] += o.c[i];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (int i = 0; i < dim; ++i) r.c[i] -= o.c[i];
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r = *this;
  for (int i = 0; i < dim; ++i) r.c[i] = -r.c[i];
  return r;
}

std::uint64_t LatticePoint::packed() const {
  constexpr std::uint64_t offset = std::uint64_t{1} << 20;
  std::uint64_t key = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    check_coord(c[i]);
    key |= (static_cast<std::uint64_t>(c[i]) + offset) << (21 * i);
  }
  return key;
}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  if (dim == 1) {
    os << c[0];
    return os.str();
  }
  os << '(';
  for (int i = 0; i < dim; ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

LatticeBox LatticeBox::cube(int dim, std::int64_t lo, std::int64_t hi) {
  check_dim(dim);
  LatticeBox b;
  b.dim = dim;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] = lo;
    b.hi[i] = hi;
  }
  return b;
}

bool LatticeBox::contains(const LatticePoint& p) const {
  for (int i = 0; i < dim; ++i) {
    if (p.c[i] < lo[i] || p.c[i] >= hi[i]) return false;
  }
  return true;
}

bool LatticeBox::empty() const {
  for (int i = 0; i < dim; ++i) {
    if (hi[i] <= lo[i]) return true;
  }
  return false;
}

std::int64_t LatticeBox::volume() const {
  if (empty()) return 0;
  std::int64_t v = 1;
  for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
  return v;
}

std::size_t LatticeBox::index_of(const LatticePoint& p) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim; ++i) {
    idx = idx * static_cast<std::size_t>(hi[i] - lo[i]) + static_cast<std::size_t>(p.c[i] - lo[i]);
  }
  return idx;
}

LatticePoint LatticeBox::point_at(std::size_t index) const {
  LatticePoint p = LatticePoint::zero(dim);
  for (int i = dim - 1; i >= 0; --i) {
    const auto s = static_cast<std::size_t>(hi[i] - lo[i]);
    p.c[i] = lo[i] + static_cast<std::int64_t>(index % s);
    index /= s;
  }
  return p;
}

LatticeBox LatticeBox::translated(const LatticePoint& t) const {
  LatticeBox b = *this;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] += t.c[i];
    b.hi[i] += t.c[i];
  }
  return b;
}

LatticeBox LatticeBox::hull(const LatticeBox& other) const {
  LatticeBox b = *this;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] = std::min(lo[i], other.lo[i]);
    b.hi[i] = std::max(hi[i], other.hi[i]);
  }
  return b;
}

bool LatticeBox::operator==(const LatticeBox& o) const {
  if (dim != o.dim) return false;
  for (int i = 0; i < dim; ++i) {
    if (lo[i] != o.lo[i] || hi[i] != o.hi[i]) return false;
  }
  return true;
}

FiniteLatticeSet::FiniteLatticeSet(std::vector<LatticePoint> points, int dim) : dim_(dim) {
  check_dim(dim);
  for (auto& p : points) {
    if (p.dim != dim) throw std::invalid_argument("point dimension mismatch in set");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
  keys_.reserve(points_.size() * 2);
  for (const auto& p : points_) keys_.insert(p.packed());
}

FiniteLatticeSet FiniteLatticeSet::from_box(const LatticeBox& box) {
  std::vector<LatticePoint> pts;
  const auto vol = box.volume();
  pts.reserve(static_cast<std::size_t>(vol));
  for (std::int64_t i = 0; i < vol; ++i) {
    pts.push_back(box.point_at(static_cast<std::size_t>(i)));
  }
  return FiniteLatticeSet(std::move(pts), box.dim);
}

bool FiniteLatticeSet::contains(const LatticePoint& p) const {
  if (p.dim != dim_) return false;
  return keys_.count(p.packed()) > 0;
}

FiniteLatticeSet FiniteLatticeSet::translated(const LatticePoint& t) const {
  std::vector<LatticePoint> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back(p + t);
  return FiniteLatticeSet(std::move(pts), dim_);
}

FiniteLatticeSet FiniteLatticeSet::set_union(const FiniteLatticeSet& other) const {
  std::vector<LatticePoint> pts = points_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  return FiniteLatticeSet(std::move(pts), dim_);
}

FiniteLatticeSet FiniteLatticeSet::set_difference(const FiniteLatticeSet& other) const {
  std::vector<LatticePoint> pts;
  for (const auto& p : points_) {
    if (!other.contains(p)) pts.push_back(p);
  }
  return FiniteLatticeSet(std::move(pts), dim_);
}

FiniteLatticeSet FiniteLatticeSet::set_intersection(const FiniteLatticeSet& other) const {
  std::vector<LatticePoint> pts;
  for (const auto& p : points_) {
    if (other.contains(p)) pts.push_back(p);
  }
  return FiniteLatticeSet(std::move(pts), dim_);
}

std::size_t FiniteLatticeSet::symmetric_difference_size(const FiniteLatticeSet& other) const {
  std::size_t n = 0;
  for (const auto& p : points_) {
    if (!other.contains(p)) ++n;
  }
  for (const auto& p : other.points_) {
    if (!contains(p)) ++n;
  }
  return n;
}

LatticeBox FiniteLatticeSet::bounding_box() const {
  if (points_.empty()) throw std::invalid_argument("bounding_box of empty set");
  LatticeBox b;
  b.dim = dim_;
  for (int i = 0; i < dim_; ++i) {
    b.lo[i] = points_.front().c[i];
    b.hi[i] = points_.front().c[i] + 1;
  }
  for (const auto& p : points_) {
    for (int i = 0; i < dim_; ++i) {
      b.lo[i] = std::min(b.lo[i], p.c[i]);
      b.hi[i] = std::max(b.hi[i], p.c[i] + 1);
    }
  }
  return b;
}

FolnerPlan FolnerPlan::boxes(int dim, BoxStyle style) {
  check_dim(dim);
  FolnerPlan plan;
  plan.dim = dim;
  plan.style = style;
  return plan;
}

LatticeBox folner_box_region(const FolnerPlan& plan, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("Folner index must be >= 1");
  const std::int64_t s = plan.side(n);
  if (s < 1) throw std::invalid_argument("Folner side must be >= 1");
  if (plan.style == BoxStyle::Anchored) {
    return LatticeBox::cube(plan.dim, 0, s);
  }
  const std::int64_t half = s / 2;
  return LatticeBox::cube(plan.dim, -half, s - half);
}

FiniteLatticeSet folner_box(const FolnerPlan& plan, std::int64_t n) {
  return FiniteLatticeSet::from_box(folner_box_region(plan, n));
}

FiniteLatticeSet boundary_set(const FiniteLatticeSet& s, const FiniteLatticeSet& t) {
  if (s.empty()) throw std::invalid_argument("boundary_set requires nonempty S");
  if (t.empty()) return FiniteLatticeSet(t.dim());
  // (union of T-s) \ (intersection of T-s) over s in S.
  std::vector<LatticePoint> candidates;
  for (const auto& sp : s.points()) {
    for (const auto& tp : t.points()) {
      candidates.push_back(tp - sp);
    }
  }
  FiniteLatticeSet candidate_set(std::move(candidates), t.dim());
  std::vector<LatticePoint> out;
  for (const auto& g : candidate_set.points()) {
    bool covered = true;
    for (const auto& sp : s.points()) {
      if (!t.contains(sp + g)) {
        covered = false;
        break;
      }
    }
    if (!covered) out.push_back(g);
  }
  return FiniteLatticeSet(std::move(out), t.dim());
}

double invariance_ratio(const FiniteLatticeSet& s, const FiniteLatticeSet& f) {
  if (f.empty()) throw std::invalid_argument("invariance_ratio requires nonempty F");
  return static_cast<double>(boundary_set(s, f).size()) / static_cast<double>(f.size());
}

std::int64_t box_boundary_size(const FiniteLatticeSet& s, const LatticeBox& box) {
  if (s.empty()) throw std::invalid_argument("box_boundary_size requires nonempty S");
  if (box.empty()) return 0;
  const int dim = box.dim;
  const auto& pts = s.points();

  // Boundary = (union of box - sp) minus (intersection of box - sp).
  std::int64_t inter = 1;
  for (int i = 0; i < dim; ++i) {
    std::int64_t lo = box.lo[i] - pts.front().c[i];
    std::int64_t hi = box.hi[i] - pts.front().c[i];
    for (const auto& p : pts) {
      lo = std::max(lo, box.lo[i] - p.c[i]);
      hi = std::min(hi, box.hi[i] - p.c[i]);
    }
    inter *= std::max<std::int64_t>(hi - lo, 0);
  }

  // Union volume by coordinate compression over the translates' breakpoints.
  std::array<std::vector<std::int64_t>, kMaxDim> cuts;
  for (int i = 0; i < dim; ++i) {
    for (const auto& p : pts) {
      cuts[static_cast<std::size_t>(i)].push_back(box.lo[i] - p.c[i]);
      cuts[static_cast<std::size_t>(i)].push_back(box.hi[i] - p.c[i]);
    }
    auto& c = cuts[static_cast<std::size_t>(i)];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  const auto cell_count = [&](int i) {
    return dim > i ? cuts[static_cast<std::size_t>(i)].size() - 1 : 1;
  };
  std::int64_t uni = 0;
  for (std::size_t xi = 0; xi < cell_count(0); ++xi) {
    for (std::size_t yi = 0; yi < cell_count(1); ++yi) {
      for (std::size_t zi = 0; zi < cell_count(2); ++zi) {
        const std::array<std::size_t, 3> idx{xi, yi, zi};
        std::int64_t volume = 1;
        LatticePoint probe = LatticePoint::zero(dim);
        for (int i = 0; i < dim; ++i) {
          const auto& c = cuts[static_cast<std::size_t>(i)];
          volume *= c[idx[static_cast<std::size_t>(i)] + 1] - c[idx[static_cast<std::size_t>(i)]];
          probe.c[i] = c[idx[static_cast<std::size_t>(i)]];
        }
        bool covered = false;
        for (const auto& p : pts) {
          if (box.contains(probe + p)) {
            covered = true;
            break;
          }
        }
        if (covered) uni += volume;
      }
    }
  }
  return uni - inter;
}

}  // namespace vdclab
