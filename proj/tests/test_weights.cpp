#include <doctest.h>

#include <cmath>

#include "tauberian/errors.hpp"
#include "tauberian/weights.hpp"

using namespace tlab;

namespace {

GridWeight constant(int dim, int n) {
  WeightFamilySpec s;
  s.dim = dim;
  s.resolution = n;
  return generate_weight(s);
}

GridWeight power1d(double a, int n, double x0 = 0) {
  WeightFamilySpec s;
  s.family = WeightFamily::power;
  s.exponent = a;
  s.center = {x0, 0};
  s.resolution = n;
  return generate_weight(s);
}

double near_rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

// Brute force over all intervals with explicit loops.
double ap_naive(const GridWeight& w, double p) {
  const int n = w.resolution();
  double best = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      double s1 = 0, s2 = 0;
      for (int i = a; i < b; ++i) {
        s1 += w.density(i);
        s2 += std::pow(w.density(i), -1 / (p - 1));
      }
      best = std::max(best, (s1 / (b - a)) * std::pow(s2 / (b - a), p - 1));
    }
  return best;
}

double fw_naive(const GridWeight& w) {
  const int n = w.resolution();
  double best = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      double mass = 0, integral = 0;
      for (int i = a; i < b; ++i) mass += w.cell_mass(i);
      for (int i = a; i < b; ++i) {
        double m = 0;
        for (int l = a; l <= i; ++l)
          for (int r = i + 1; r <= b; ++r) {
            double s = 0;
            for (int k = l; k < r; ++k) s += w.cell_mass(k);
            m = std::max(m, s / (r - l));
          }
        integral += m;
      }
      best = std::max(best, integral / mass);
    }
  return best;
}

}  // namespace

TEST_CASE("generators") {
  auto c = constant(1, 4).values();
  for (double v : c) CHECK(v == doctest::Approx(0.25));
  auto p = power1d(1, 2).values();
  CHECK(p[0] == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(3.0 / 8).epsilon(1e-15));
  WeightFamilySpec s;
  s.family = WeightFamily::log_smooth_random;
  s.seed = 42;
  s.resolution = 32;
  CHECK(generate_weight(s).units() == generate_weight(s).units());
  s.family = WeightFamily::power;
  s.exponent = -1;
  CHECK_THROWS_AS(generate_weight(s), Error);
}

TEST_CASE("cube mass") {
  GridWeight w = constant(2, 8);
  CHECK(w.mass(GridCube{{0, 0}, 8}) == doctest::Approx(1));
  CHECK(w.average(GridCube{{0, 0}, 8}) == doctest::Approx(1));
  GridWeight p = power1d(2, 16);
  double naive = 0;
  for (int i = 3; i < 9; ++i) naive += p.cell_mass(i);
  CHECK(p.mass(GridCube{{3, 0}, 6}) == doctest::Approx(naive).epsilon(1e-14));
  CHECK(p.mass(GridCube{{0, 0}, 4}) + p.mass(GridCube{{4, 0}, 5}) == doctest::Approx(p.mass(GridCube{{0, 0}, 9})));
  CHECK_THROWS_AS(p.mass(GridCube{{14, 0}, 4}), Error);
}

TEST_CASE("A_p constant") {
  for (double p : {1.5, 2.0, 8.0}) CHECK(near_rel(ap_constant(constant(1, 16), p), 1) < 1e-12);
  GridWeight w = power1d(1, 16);
  double ap = ap_constant(w, 2);
  CHECK(ap >= 1);
  CHECK(near_rel(ap, ap_naive(w, 2)) < 1e-9);
  double prev = ap_constant(w, 2);
  for (double p : {4.0, 8.0, 16.0}) {
    double v = ap_constant(w, p);
    CHECK(v <= prev * (1 + 1e-12));
    prev = v;
  }
  std::vector<double> zero(8, 1.0);
  zero[3] = 0;
  CHECK_THROWS_AS(ap_constant(GridWeight(1, 8, zero), 2), Error);
}

TEST_CASE("Fujii-Wilson constant") {
  CHECK(near_rel(fujii_wilson(constant(1, 32)), 1) < 1e-12);
  CHECK(near_rel(fujii_wilson(constant(2, 8)), 1) < 1e-12);
  GridWeight w = power1d(2, 16);
  CHECK(fujii_wilson(w) > 1);
  CHECK(near_rel(fujii_wilson(w), fw_naive(w)) < 1e-9);
  CHECK(fujii_wilson(power1d(2, 64)) > 1);
  CHECK(fujii_wilson(power1d(2, 32)) >= fujii_wilson(power1d(2, 16)) * (1 - 1e-12));
  CHECK_THROWS_AS(fujii_wilson(constant(1, 1024)), Error);
}

TEST_CASE("Hruscev constant") {
  CHECK(near_rel(hruscev_constant(constant(1, 16)), 1) < 1e-12);
  // Half the cells at density 1, half at e^2: the full interval alone gives (1+e^2)/(2e).
  std::vector<double> v;
  for (int i = 0; i < 8; ++i) v.push_back(i < 4 ? 1.0 : std::exp(2.0));
  GridWeight w(1, 8, v);
  double h = hruscev_constant(w);
  CHECK(h >= (1 + std::exp(2.0)) / (2 * std::exp(1.0)) * (1 - 1e-12));
  CHECK(h >= 1);
  std::vector<double> zero(8, 1.0);
  zero[0] = 0;
  CHECK_THROWS_AS(hruscev_constant(GridWeight(1, 8, zero)), Error);
}

TEST_CASE("doubling constant") {
  CHECK(near_rel(doubling_constant(constant(1, 16)), 2) < 1e-12);
  CHECK(near_rel(doubling_constant(constant(2, 8)), 4) < 1e-12);
  // w = x on [0,1]: mass of [c-r, c+r] is 2cr, largest ratio at intervals touching 0.
  GridWeight w = power1d(1, 16);
  double oracle = 0;
  for (int s = 2; s <= 16; s += 2)
    for (int x = 0; x + s <= 16; ++x) {
      int lo = x - s / 2, hi = x + s + s / 2;
      if (lo < 0 || hi > 16) continue;
      auto m = [](double a, double b) { return (b * b - a * a) / 2; };
      oracle = std::max(oracle, m(lo / 16.0, hi / 16.0) / m(x / 16.0, (x + s) / 16.0));
    }
  CHECK(near_rel(doubling_constant(w), oracle) < 1e-9);
  CHECK(doubling_constant(w) >= 1);
  CHECK_THROWS_AS(doubling_constant(constant(1, 2)), Error);
}

TEST_CASE("growth profile") {
  auto prof = growth_profile(constant(1, 32), {0.25, 0.5, 1.0});
  CHECK(prof.at(0.25) == doctest::Approx(0.25));
  CHECK(prof.at(1.0) == doctest::Approx(1));
  GridWeight w = power1d(4, 16);
  double phi = growth_profile(w, {1.0 / 16}).at(1.0 / 16);
  CHECK(phi > 4.0 / 16);
  // brute force: heaviest k cells of each interval
  double oracle = 0;
  for (int a = 0; a < 16; ++a)
    for (int b = a + 1; b <= 16; ++b) {
      std::vector<double> cells;
      double tot = 0;
      for (int i = a; i < b; ++i) {
        cells.push_back(w.cell_mass(i));
        tot += w.cell_mass(i);
      }
      std::sort(cells.rbegin(), cells.rend());
      int k = static_cast<int>(std::floor((b - a) / 16.0 + 1e-9));
      double s = 0;
      for (int i = 0; i < k; ++i) s += cells[i];
      oracle = std::max(oracle, s / tot);
    }
  CHECK(near_rel(phi, oracle) < 1e-12);
  CHECK_THROWS_AS(growth_profile(w, {0.0}), Error);
}

TEST_CASE("fit_growth_exponent") {
  std::map<double, double> lin, cube_root;
  for (double t : default_growth_ts()) {
    lin[t] = t;
    cube_root[t] = 2 * std::cbrt(t);
  }
  auto a = fit_growth_exponent(lin);
  CHECK(a.c1 == doctest::Approx(1).epsilon(1e-9));
  CHECK(a.c2 == doctest::Approx(1).epsilon(1e-9));
  CHECK(a.ainfty_bound == doctest::Approx(1).epsilon(1e-9));
  auto b = fit_growth_exponent(cube_root);
  CHECK(b.c1 == doctest::Approx(2).epsilon(1e-9));
  CHECK(b.c2 == doctest::Approx(3).epsilon(1e-9));
  CHECK(b.ainfty_bound == doctest::Approx(3 * (1 + std::log(2.0))).epsilon(1e-9));
  std::map<double, double> flat{{1.0 / 64, 0.5}, {1.0 / 32, 0.5}, {1.0 / 16, 0.5}};
  CHECK_THROWS_AS(fit_growth_exponent(flat), Error);
  double prev = 0;
  for (double a2 : {1.0, 2.0, 4.0}) {
    double c2 = fit_growth_exponent(growth_profile(power1d(a2, 64), default_growth_ts())).c2;
    CHECK(c2 > prev);
    prev = c2;
  }
}

TEST_CASE("reverse Holder exponent") {
  CHECK(reverse_holder_exponent(constant(1, 16)).epsilon == doctest::Approx(1));
  auto r = reverse_holder_exponent(power1d(2, 32));
  CHECK(r.epsilon > 0);
  CHECK(r.epsilon <= 1);
}

TEST_CASE("sidelength growth exponent") {
  CHECK(near_rel(sidelength_growth_exponent(constant(1, 16)), 1) < 1e-12);
  CHECK(near_rel(sidelength_growth_exponent(constant(2, 8), true), 2) < 1e-12);
  CHECK(sidelength_growth_exponent(power1d(2, 32)) == doctest::Approx(3).epsilon(0.01));
  CHECK_THROWS_AS(sidelength_growth_exponent(constant(1, 4)), Error);
}
