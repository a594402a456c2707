#pragma once

#include <cstddef>
#include <vector>

namespace tlab {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double rms = 0;  // root mean square residual
};

// Ordinary least squares y ~ intercept + slope x. Throws fit-degenerate when
// fewer than two points are given or all x coincide.
LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace tlab
