#include "tauberian/geometry.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>

#include "tauberian/errors.hpp"

namespace tlab {

Box::Box(std::vector<Rat> center, Rat side) : center_(std::move(center)), side_(std::move(side)) {
  require(!center_.empty() && center_.size() <= kMaxGeometryDim, Errc::invalid_argument,
          "box dimension must be 1, 2 or 3");
  require(side_ > 0, Errc::invalid_argument, "box sidelength must be positive");
}

Box Box::from_corner(std::vector<Rat> lower, Rat side) {
  Rat half = side / 2;
  for (auto& x : lower) x += half;
  return Box(std::move(lower), std::move(side));
}

Rat Box::lo(std::size_t axis) const { return center_[axis] - side_ / 2; }
Rat Box::hi(std::size_t axis) const { return center_[axis] + side_ / 2; }

Rat Box::volume() const { return pow(side_, static_cast<unsigned>(dim())); }

bool Box::contains(std::span<const Rat> point) const {
  if (point.size() != dim()) fail(Errc::invalid_argument, "point dimension mismatch");
  Rat half = side_ / 2;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (point[a] < center_[a] - half || point[a] > center_[a] + half) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const {
  if (other.dim() != dim()) fail(Errc::invalid_argument, "box dimension mismatch");
  for (std::size_t a = 0; a < dim(); ++a) {
    if (other.lo(a) < lo(a) || other.hi(a) > hi(a)) return false;
  }
  return true;
}

bool Box::intersects(const Box& other) const {
  if (other.dim() != dim()) fail(Errc::invalid_argument, "box dimension mismatch");
  for (std::size_t a = 0; a < dim(); ++a) {
    if (other.hi(a) < lo(a) || other.lo(a) > hi(a)) return false;
  }
  return true;
}

Box dilate(const Box& b, const Rat& factor) {
  require(factor > 0, Errc::invalid_argument, "dilation factor must be positive");
  return Box(b.center(), b.side() * factor);
}

Box dilate_about(const Box& b, std::span<const Rat> origin, const Rat& factor) {
  require(factor > 0, Errc::invalid_argument, "dilation factor must be positive");
  require(origin.size() == b.dim(), Errc::invalid_argument, "dilation origin dimension mismatch");
  std::vector<Rat> c(b.dim());
  for (std::size_t a = 0; a < b.dim(); ++a) c[a] = origin[a] + factor * (b.center()[a] - origin[a]);
  return Box(std::move(c), b.side() * factor);
}

BoxFamily::BoxFamily(std::vector<Box> bs, Ordering ord) : boxes(std::move(bs)), ordering(ord) {
  for (const auto& b : boxes)
    require(b.dim() == boxes.front().dim(), Errc::invalid_argument, "mixed dimensions in box family");
  if (ordering == Ordering::decreasing_sidelength && !is_nonincreasing())
    fail(Errc::ordering_violation, "family tagged decreasing-sidelength is not sorted");
}

std::vector<std::size_t> BoxFamily::decreasing_order(std::span<const Box> boxes) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].side() > boxes[b].side(); });
  return order;
}

BoxFamily BoxFamily::sorted_decreasing(std::vector<Box> bs) {
  auto order = decreasing_order(bs);
  std::vector<Box> sorted;
  sorted.reserve(bs.size());
  for (auto i : order) sorted.push_back(bs[i]);
  return BoxFamily(std::move(sorted), Ordering::decreasing_sidelength);
}

bool BoxFamily::is_nonincreasing() const {
  for (std::size_t i = 1; i < boxes.size(); ++i)
    if (boxes[i].side() > boxes[i - 1].side()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Coordinate compression.

namespace {

struct AxisRange {
  std::size_t lo = 0, hi = 0;  // cell indices [lo, hi)
};

// Geometry axis a of a dim-dimensional box lives in grid slot 3 - dim + a, so
// the innermost loop always runs over a real axis.
class CellGrid {
 public:
  CellGrid(std::size_t dim, const std::vector<const Box*>& boxes) : dim_(dim) {
    for (std::size_t slot = 0; slot < 3; ++slot) {
      auto& coords = coords_[slot];
      if (slot < 3 - dim) {
        coords = {Rat(0), Rat(1)};
        continue;
      }
      std::size_t a = slot - (3 - dim);
      coords.reserve(2 * boxes.size());
      for (const Box* b : boxes) {
        coords.push_back(b->lo(a));
        coords.push_back(b->hi(a));
      }
      std::sort(coords.begin(), coords.end());
      coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
      if (coords.size() < 2) coords = {Rat(0), Rat(1)};
    }
    for (std::size_t s = 0; s < 3; ++s) n_[s] = coords_[s].size() - 1;
  }

  std::size_t cells() const { return n_[0] * n_[1] * n_[2]; }

  std::array<AxisRange, 3> range(const Box& b) const {
    std::array<AxisRange, 3> r;
    for (std::size_t slot = 0; slot < 3; ++slot) {
      if (slot < 3 - dim_) {
        r[slot] = {0, 1};
        continue;
      }
      std::size_t a = slot - (3 - dim_);
      const auto& c = coords_[slot];
      r[slot].lo = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), b.lo(a)) - c.begin());
      r[slot].hi = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), b.hi(a)) - c.begin());
    }
    return r;
  }

  void paint(const BoxRegion& region, std::uint8_t bit, std::vector<std::uint8_t>& mask,
             std::vector<std::uint8_t>& scratch) const {
    for (const auto& piece : region.pieces()) {
      auto br = range(piece.base);
      if (piece.holes.empty()) {
        for_range(br, [&](std::size_t idx) { mask[idx] |= bit; });
        continue;
      }
      for (const auto& h : piece.holes) {
        auto hr = range(h);
        std::array<AxisRange, 3> cut;
        bool empty = false;
        for (std::size_t s = 0; s < 3; ++s) {
          cut[s] = {std::max(br[s].lo, hr[s].lo), std::min(br[s].hi, hr[s].hi)};
          if (cut[s].lo >= cut[s].hi) empty = true;
        }
        if (!empty) for_range(cut, [&](std::size_t idx) { scratch[idx] = 1; });
      }
      for_range(br, [&](std::size_t idx) {
        if (!scratch[idx]) mask[idx] |= bit;
        scratch[idx] = 0;
      });
    }
  }

  template <class Pred>
  Rat measure(const std::vector<std::uint8_t>& mask, Pred pred) const {
    std::array<std::vector<Int>, 3> widths;
    std::array<Int, 3> scale;
    bool small = true;
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& c = coords_[s];
      Int l = 1;
      for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
      scale[s] = l;
      widths[s].resize(n_[s]);
      for (std::size_t i = 0; i < n_[s]; ++i) {
        Rat w = (c[i + 1] - c[i]) * l;
        widths[s][i] = w.get_num();
      }
      Int extent = Rat((c.back() - c.front()) * l).get_num();
      if (!extent.fits_slong_p() || extent > Int(1) << 61) small = false;
    }

    Int total = 0;
    if (small) {
      std::vector<std::int64_t> w2(n_[2]);
      for (std::size_t k = 0; k < n_[2]; ++k) w2[k] = widths[2][k].get_si();
      for (std::size_t i = 0; i < n_[0]; ++i) {
        for (std::size_t j = 0; j < n_[1]; ++j) {
          std::int64_t inner = 0;
          std::size_t base = (i * n_[1] + j) * n_[2];
          for (std::size_t k = 0; k < n_[2]; ++k)
            if (pred(mask[base + k])) inner += w2[k];
          if (inner != 0) total += widths[0][i] * widths[1][j] * Int(static_cast<long>(inner));
        }
      }
    } else {
      for (std::size_t i = 0; i < n_[0]; ++i)
        for (std::size_t j = 0; j < n_[1]; ++j) {
          Int inner = 0;
          std::size_t base = (i * n_[1] + j) * n_[2];
          for (std::size_t k = 0; k < n_[2]; ++k)
            if (pred(mask[base + k])) inner += widths[2][k];
          if (inner != 0) total += widths[0][i] * widths[1][j] * inner;
        }
    }
    Rat r(total, scale[0] * scale[1] * scale[2]);
    r.canonicalize();
    return r;
  }

 private:
  template <class F>
  void for_range(const std::array<AxisRange, 3>& r, F f) const {
    for (std::size_t i = r[0].lo; i < r[0].hi; ++i)
      for (std::size_t j = r[1].lo; j < r[1].hi; ++j) {
        std::size_t base = (i * n_[1] + j) * n_[2];
        for (std::size_t k = r[2].lo; k < r[2].hi; ++k) f(base + k);
      }
  }

  std::size_t dim_;
  std::array<std::vector<Rat>, 3> coords_;
  std::array<std::size_t, 3> n_{};
};

void collect(const BoxRegion& r, std::vector<const Box*>& out) {
  for (const auto& p : r.pieces()) {
    out.push_back(&p.base);
    for (const auto& h : p.holes) out.push_back(&h);
  }
}

// Paints a (bit 1) and b (bit 2) on a shared compressed grid.
struct PairPaint {
  CellGrid grid;
  std::vector<std::uint8_t> mask;

  static PairPaint make(const BoxRegion& a, const BoxRegion& b) {
    if (a.dim() != b.dim()) fail(Errc::invalid_argument, "region dimension mismatch");
    std::vector<const Box*> boxes;
    collect(a, boxes);
    collect(b, boxes);
    PairPaint pp{CellGrid(a.dim(), boxes), {}};
    pp.mask.assign(pp.grid.cells(), 0);
    std::vector<std::uint8_t> scratch(pp.grid.cells(), 0);
    pp.grid.paint(a, 1, pp.mask, scratch);
    pp.grid.paint(b, 2, pp.mask, scratch);
    return pp;
  }
};

bool interiors_meet(const Box& a, const Box& b) {
  for (std::size_t ax = 0; ax < a.dim(); ++ax)
    if (a.hi(ax) <= b.lo(ax) || a.lo(ax) >= b.hi(ax)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

BoxRegion BoxRegion::from_box(const Box& b) {
  BoxRegion r(b.dim());
  r.add_piece(b, {});
  return r;
}

BoxRegion BoxRegion::from_boxes(std::span<const Box> boxes, std::size_t dim) {
  BoxRegion r(dim);
  for (const auto& b : boxes) r.add_piece(b, {});
  return r;
}

void BoxRegion::add_piece(const Box& base, std::vector<Box> holes) {
  require(base.dim() == dim_, Errc::invalid_argument, "region dimension mismatch");
  std::vector<Box> kept;
  for (auto& h : holes) {
    require(h.dim() == dim_, Errc::invalid_argument, "region dimension mismatch");
    if (!interiors_meet(base, h)) continue;
    if (h.contains(base)) return;
    kept.push_back(std::move(h));
  }
  pieces_.push_back({base, std::move(kept)});
}

void BoxRegion::unite(const BoxRegion& other) {
  require(other.dim_ == dim_, Errc::invalid_argument, "region dimension mismatch");
  pieces_.insert(pieces_.end(), other.pieces_.begin(), other.pieces_.end());
}

Rat BoxRegion::measure() const {
  if (pieces_.empty()) return Rat(0);
  std::vector<const Box*> boxes;
  collect(*this, boxes);
  CellGrid grid(dim_, boxes);
  std::vector<std::uint8_t> mask(grid.cells(), 0), scratch(grid.cells(), 0);
  grid.paint(*this, 1, mask, scratch);
  return grid.measure(mask, [](std::uint8_t m) { return m != 0; });
}

bool BoxRegion::contains(std::span<const Rat> point) const {
  for (const auto& p : pieces_) {
    if (!p.base.contains(point)) continue;
    bool in_hole = false;
    for (const auto& h : p.holes)
      if (h.contains(point)) {
        in_hole = true;
        break;
      }
    if (!in_hole) return true;
  }
  return false;
}

BoxRegion BoxRegion::dilated_about(std::span<const Rat> origin, const Rat& factor) const {
  BoxRegion r(dim_);
  for (const auto& p : pieces_) {
    std::vector<Box> holes;
    holes.reserve(p.holes.size());
    for (const auto& h : p.holes) holes.push_back(dilate_about(h, origin, factor));
    r.pieces_.push_back({dilate_about(p.base, origin, factor), std::move(holes)});
  }
  return r;
}

Rat intersection_measure(const BoxRegion& a, const BoxRegion& b) {
  if (!a.has_pieces() || !b.has_pieces()) return Rat(0);
  auto pp = PairPaint::make(a, b);
  return pp.grid.measure(pp.mask, [](std::uint8_t m) { return m == 3; });
}

Rat difference_measure(const BoxRegion& a, const BoxRegion& b) {
  if (!a.has_pieces()) return Rat(0);
  if (!b.has_pieces()) return a.measure();
  auto pp = PairPaint::make(a, b);
  return pp.grid.measure(pp.mask, [](std::uint8_t m) { return m == 1; });
}

Rat symmetric_difference_measure(const BoxRegion& a, const BoxRegion& b) {
  if (!a.has_pieces()) return b.measure();
  if (!b.has_pieces()) return a.measure();
  auto pp = PairPaint::make(a, b);
  return pp.grid.measure(pp.mask, [](std::uint8_t m) { return m == 1 || m == 2; });
}

bool covered_by(const BoxRegion& a, const BoxRegion& b) { return difference_measure(a, b) == 0; }

BoxRegion dilate_set_about(const Box& b_center, const BoxRegion& region, const Rat& factor) {
  require(region.dim() == b_center.dim(), Errc::invalid_argument, "dilation center dimension mismatch");
  return region.dilated_about(b_center.center(), factor);
}

Rat union_measure(std::span<const Box> boxes) {
  if (boxes.empty()) return Rat(0);
  return BoxRegion::from_boxes(boxes, boxes.front().dim()).measure();
}

Rat union_measure(const BoxFamily& family) { return union_measure(std::span<const Box>(family.boxes)); }

std::vector<BoxRegion> increments_in_order(std::span<const Box> boxes) {
  std::vector<BoxRegion> out;
  out.reserve(boxes.size());
  for (std::size_t j = 0; j < boxes.size(); ++j) {
    BoxRegion e(boxes[j].dim());
    e.add_piece(boxes[j], std::vector<Box>(boxes.begin(), boxes.begin() + static_cast<std::ptrdiff_t>(j)));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<BoxRegion> increments(const BoxFamily& family) {
  if (family.ordering != Ordering::decreasing_sidelength || !family.is_nonincreasing())
    fail(Errc::ordering_violation, "increments need a decreasing-sidelength family");
  return increments_in_order(family.boxes);
}

IdentityCheck check_dilation_identity(const BoxFamily& family, const Rat& delta) {
  IdentityCheck out;
  out.ordered = family.is_nonincreasing();
  if (family.empty()) {
    out.holds = true;
    return out;
  }
  Rat factor = 1 + delta;
  require(factor > 0, Errc::invalid_argument, "1 + delta must be positive");
  const std::size_t dim = family.dim();
  BoxRegion lhs(dim), rhs(dim);
  auto incs = increments_in_order(family.boxes);
  for (std::size_t j = 0; j < family.size(); ++j) {
    const Box& q = family.boxes[j];
    lhs.add_piece(dilate(q, factor), {});
    rhs.unite(incs[j].dilated_about(q.center(), factor));
  }
  out.defect = symmetric_difference_measure(lhs, rhs);
  out.holds = out.defect == 0;
  return out;
}

Rat enlargement_excess(const BoxFamily& family, const Rat& delta) {
  require(delta > 0 && delta < 1, Errc::invalid_argument, "delta must lie in (0,1)");
  if (family.empty()) return Rat(0);
  Rat factor = 1 + delta;
  std::vector<Box> dilated;
  dilated.reserve(family.size());
  for (const auto& b : family.boxes) dilated.push_back(dilate(b, factor));
  return difference_measure(BoxRegion::from_boxes(dilated, family.dim()),
                            BoxRegion::from_boxes(family.boxes, family.dim()));
}

bool is_satellite(const BoxFamily& family, std::size_t center_index) {
  require(center_index < family.size(), Errc::invalid_argument, "center index out of range");
  const Box& c = family.boxes[center_index];
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (j == center_index) continue;
    const Box& q = family.boxes[j];
    if (!q.intersects(c) || q.side() > c.side()) return false;
  }
  assert(within_triple_of(family, center_index));
  return true;
}

bool within_triple_of(const BoxFamily& family, std::size_t center_index) {
  require(center_index < family.size(), Errc::invalid_argument, "center index out of range");
  Box triple = dilate(family.boxes[center_index], Rat(3));
  for (const auto& q : family.boxes)
    if (!triple.contains(q)) return false;
  return true;
}

}  // namespace tlab
