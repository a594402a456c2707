#pragma once

// Exact one-dimensional maximal function of characteristic functions of
// finite unions of intervals, for Lebesgue measure or piecewise-constant
// weights with rational breakpoints and densities. No floating point.

#include <optional>
#include <vector>

#include "tauberian/rational.hpp"
#include "tauberian/weights.hpp"

namespace tlab {

struct Interval {
  Rat lo, hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of closed intervals, kept sorted with overlapping or touching
// members merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Throws invalid-argument on an interval with lo >= hi.
  explicit IntervalSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  Rat measure() const;
  bool contains(const Rat& x) const;
  // Interior intersection; touching endpoints drop out.
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet clip(const Rat& lo, const Rat& hi) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> iv_;
};

class PiecewiseWeight1D {
 public:
  // densities[i] lives on [breakpoints[i], breakpoints[i+1]].
  PiecewiseWeight1D(std::vector<Rat> breakpoints, std::vector<Rat> densities);
  static PiecewiseWeight1D constant(const Rat& lo, const Rat& hi, const Rat& density = Rat(1));
  // The grid weight as a step function on [0,1], exact in its quantized units.
  static PiecewiseWeight1D from_grid(const GridWeight& w);

  const std::vector<Rat>& breakpoints() const { return bp_; }
  const std::vector<Rat>& densities() const { return dens_; }
  const Rat& lo() const { return bp_.front(); }
  const Rat& hi() const { return bp_.back(); }
  // Density on the piece containing x (right-continuous, last piece closed).
  const Rat& density_at(const Rat& x) const;

  Rat mass(const Rat& a, const Rat& b) const;
  Rat measure(const IntervalSet& s) const;

 private:
  std::vector<Rat> bp_;
  std::vector<Rat> dens_;
};

// Null weight pointer means Lebesgue measure.
Rat measure_1d(const IntervalSet& s, const PiecewiseWeight1D* w);

// Uncentered maximal function of chi_E at x.
Rat point_eval_1d(const IntervalSet& e, const Rat& x, const PiecewiseWeight1D* w);

// {x : M chi_E (x) > alpha}, returned as the closures of its components.
IntervalSet exact_halo_1d(const IntervalSet& e, const Rat& alpha, const PiecewiseWeight1D* w);

}  // namespace tlab
