#include "tauberian/numeric.hpp"

#include <cmath>

#include "tauberian/errors.hpp"

namespace tlab {

LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  require(xs.size() == ys.size(), Errc::invalid_argument, "fit: x and y sizes differ");
  if (xs.size() < 2) fail(Errc::fit_degenerate, "fit needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) fail(Errc::fit_degenerate, "fit: all x values coincide");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace tlab
