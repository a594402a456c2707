#include "tauberian/exact1d.hpp"

#include <algorithm>

#include "tauberian/errors.hpp"

namespace tlab {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (const auto& i : intervals)
    require(i.lo < i.hi, Errc::invalid_argument, "interval needs lo < hi");
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& i : intervals) {
    if (!iv_.empty() && i.lo <= iv_.back().hi) {
      if (i.hi > iv_.back().hi) iv_.back().hi = i.hi;
    } else {
      iv_.push_back(std::move(i));
    }
  }
}

Rat IntervalSet::measure() const {
  Rat m = 0;
  for (const auto& i : iv_) m += i.hi - i.lo;
  return m;
}

bool IntervalSet::contains(const Rat& x) const {
  auto it = std::upper_bound(iv_.begin(), iv_.end(), x, [](const Rat& v, const Interval& i) { return v < i.lo; });
  if (it == iv_.begin()) return false;
  --it;
  return x <= it->hi;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < iv_.size() && j < other.iv_.size()) {
    const Rat& lo = std::max(iv_[i].lo, other.iv_[j].lo);
    const Rat& hi = std::min(iv_[i].hi, other.iv_[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (iv_[i].hi < other.iv_[j].hi)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = iv_;
  all.insert(all.end(), other.iv_.begin(), other.iv_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::clip(const Rat& lo, const Rat& hi) const {
  return intersect(IntervalSet({{lo, hi}}));
}

PiecewiseWeight1D::PiecewiseWeight1D(std::vector<Rat> breakpoints, std::vector<Rat> densities)
    : bp_(std::move(breakpoints)), dens_(std::move(densities)) {
  require(bp_.size() >= 2 && dens_.size() + 1 == bp_.size(), Errc::invalid_argument,
          "piecewise weight needs one density per piece");
  for (std::size_t i = 0; i + 1 < bp_.size(); ++i) {
    require(bp_[i] < bp_[i + 1], Errc::invalid_argument, "breakpoints must increase");
    require(dens_[i] > 0, Errc::invalid_argument, "densities must be positive");
  }
}

PiecewiseWeight1D PiecewiseWeight1D::constant(const Rat& lo, const Rat& hi, const Rat& density) {
  return PiecewiseWeight1D({lo, hi}, {density});
}

PiecewiseWeight1D PiecewiseWeight1D::from_grid(const GridWeight& w) {
  require(w.dim() == 1, Errc::invalid_argument, "piecewise weights are 1-D");
  const int n = w.resolution();
  std::vector<Rat> bp, dens;
  for (int i = 0; i <= n; ++i) bp.push_back(make_rat(i, n));
  for (int i = 0; i < n; ++i) {
    require(w.units()[i] > 0, Errc::invalid_argument, "piecewise weights need positive cells");
    dens.push_back(Rat(Int(static_cast<long>(w.units()[i])) * n));
  }
  return PiecewiseWeight1D(std::move(bp), std::move(dens));
}

const Rat& PiecewiseWeight1D::density_at(const Rat& x) const {
  require(x >= lo() && x <= hi(), Errc::invalid_argument, "point outside the weight's domain");
  auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
  std::size_t piece = static_cast<std::size_t>(it - bp_.begin());
  piece = piece == 0 ? 0 : std::min(piece - 1, dens_.size() - 1);
  return dens_[piece];
}

Rat PiecewiseWeight1D::mass(const Rat& a, const Rat& b) const {
  require(a >= lo() && b <= hi(), Errc::invalid_argument, "interval outside the weight's domain");
  Rat m = 0;
  if (b <= a) return m;
  auto it = std::upper_bound(bp_.begin(), bp_.end(), a);
  std::size_t i = it == bp_.begin() ? 0 : static_cast<std::size_t>(it - bp_.begin()) - 1;
  for (; i < dens_.size() && bp_[i] < b; ++i) {
    const Rat& l = std::max(a, bp_[i]);
    const Rat& r = std::min(b, bp_[i + 1]);
    if (l < r) m += (r - l) * dens_[i];
  }
  return m;
}

Rat PiecewiseWeight1D::measure(const IntervalSet& s) const {
  Rat m = 0;
  for (const auto& i : s.intervals()) m += mass(i.lo, i.hi);
  return m;
}

Rat measure_1d(const IntervalSet& s, const PiecewiseWeight1D* w) { return w ? w->measure(s) : s.measure(); }

namespace {

Rat mass_of(const PiecewiseWeight1D* w, const Rat& a, const Rat& b) { return w ? w->mass(a, b) : Rat(b - a); }

// Elementary segments between consecutive breakpoints of E and of the weight,
// each fully inside or fully outside E, with constant density.
struct Segment {
  Rat lo, hi;  // hi unused (infinite) for an unbounded tail
  bool in_e = false;
  Rat density;
  bool infinite = false;
};

struct Layout {
  std::vector<Rat> points;        // merged breakpoints
  std::vector<Segment> segments;  // between consecutive points
};

Layout build_layout(const IntervalSet& e, const PiecewiseWeight1D* w) {
  Layout l;
  for (const auto& i : e.intervals()) {
    l.points.push_back(i.lo);
    l.points.push_back(i.hi);
  }
  if (w) {
    for (const auto& i : e.intervals())
      require(i.lo >= w->lo() && i.hi <= w->hi(), Errc::invalid_argument, "E must lie inside the weight's domain");
    l.points.insert(l.points.end(), w->breakpoints().begin(), w->breakpoints().end());
  }
  std::sort(l.points.begin(), l.points.end());
  l.points.erase(std::unique(l.points.begin(), l.points.end()), l.points.end());
  for (std::size_t i = 0; i + 1 < l.points.size(); ++i) {
    Segment s;
    s.lo = l.points[i];
    s.hi = l.points[i + 1];
    Rat mid = (s.lo + s.hi) / 2;
    s.in_e = e.contains(mid);
    s.density = w ? w->density_at(mid) : Rat(1);
    l.segments.push_back(std::move(s));
  }
  return l;
}

// Largest q >= anchor with f(q) = mu(E n [p,q]) - alpha mu([p,q]) > 0 on the
// way, or nullopt when f never becomes positive. Segments are scanned from
// index first; the tail (if any) is unbounded with density 1 outside E.
std::optional<Rat> reach(const std::vector<Segment>& segs, std::size_t first, bool tail, const Rat& alpha, int dir) {
  // dir = +1 scans rightwards from segs[first].lo, dir = -1 leftwards from segs[first].hi
  Rat f = 0;
  std::optional<Rat> best;
  const long count = static_cast<long>(segs.size());
  for (long k = static_cast<long>(first); k >= 0 && k < count; k += dir) {
    const Segment& s = segs[k];
    Rat len = s.hi - s.lo;
    Rat slope = ((s.in_e ? Rat(1) : Rat(0)) - alpha) * s.density;
    const Rat& start = dir > 0 ? s.lo : s.hi;
    const Rat& end = dir > 0 ? s.hi : s.lo;
    Rat f_end = f + slope * len;
    if (f_end > 0) {
      best = end;
    } else if (f > 0) {
      // positive at the start, root inside the segment
      Rat root = start + Rat(dir) * (f / -slope);
      best = root;
    }
    f = f_end;
  }
  if (tail && f > 0) {
    const Rat& edge = dir > 0 ? segs.back().hi : segs.front().lo;
    best = edge + Rat(dir) * (f / alpha);
  }
  return best;
}

}  // namespace

Rat point_eval_1d(const IntervalSet& e, const Rat& x, const PiecewiseWeight1D* w) {
  if (w) require(x >= w->lo() && x <= w->hi(), Errc::invalid_argument, "point outside the weight's domain");
  if (e.contains(x)) return Rat(1);
  std::vector<Rat> cand;
  for (const auto& i : e.intervals()) {
    cand.push_back(i.lo);
    cand.push_back(i.hi);
  }
  if (w) cand.insert(cand.end(), w->breakpoints().begin(), w->breakpoints().end());
  cand.push_back(x);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  Rat best = 0;
  for (const auto& p : cand) {
    if (p > x) break;
    for (auto it = cand.rbegin(); it != cand.rend() && *it >= x; ++it) {
      const Rat& q = *it;
      if (q == p) continue;
      Rat denom = mass_of(w, p, q);
      if (denom <= 0) continue;
      Rat r = measure_1d(e.clip(p, q), w) / denom;
      if (r > best) best = r;
    }
  }
  return best;
}

IntervalSet exact_halo_1d(const IntervalSet& e, const Rat& alpha, const PiecewiseWeight1D* w) {
  require(!e.empty(), Errc::invalid_argument, "halo needs a nonempty E");
  require(alpha > 0 && alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  Layout l = build_layout(e, w);
  const bool tails = w == nullptr;
  std::vector<Interval> pieces(e.intervals());
  for (std::size_t k = 0; k < l.points.size(); ++k) {
    // rightwards from point k: segments k, k+1, ...
    if (k < l.segments.size() || tails) {
      std::optional<Rat> r;
      if (k < l.segments.size()) {
        r = reach(l.segments, k, tails, alpha, +1);
      }
      if (r && *r > l.points[k]) pieces.push_back({l.points[k], *r});
    }
    // leftwards from point k: segments k-1, k-2, ...
    if (k > 0) {
      auto r = reach(l.segments, k - 1, tails, alpha, -1);
      if (r && *r < l.points[k]) pieces.push_back({*r, l.points[k]});
    }
  }
  return IntervalSet(std::move(pieces));
}

}  // namespace tlab
