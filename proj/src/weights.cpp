#include "tauberian/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/numeric.hpp"

namespace tlab {

namespace {

constexpr int kFwCap1d = 512;
constexpr int kFwCap2d = 32;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Summed table over per-cell long doubles, same layout as GridWeight.
class PrefixTable {
 public:
  PrefixTable(int dim, int n, const std::vector<long double>& cell) : dim_(dim), n_(n) {
    if (dim == 1) {
      t_.assign(n + 1, 0);
      for (int i = 0; i < n; ++i) t_[i + 1] = t_[i] + cell[i];
    } else {
      const int m = n + 1;
      t_.assign(std::size_t(m) * m, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          t_[(i + 1) * m + j + 1] = cell[std::size_t(i) * n + j] + t_[i * m + j + 1] + t_[(i + 1) * m + j] - t_[i * m + j];
    }
  }

  long double sum(const GridCube& q) const {
    const int x = q.corner[0], s = q.side;
    if (dim_ == 1) return t_[x + s] - t_[x];
    const int y = q.corner[1], m = n_ + 1;
    return t_[(x + s) * m + y + s] - t_[x * m + y + s] - t_[(x + s) * m + y] + t_[x * m + y];
  }

 private:
  int dim_, n_;
  std::vector<long double> t_;
};

std::vector<long double> map_densities(const GridWeight& w, auto f) {
  std::vector<long double> out(w.cells());
  for (std::size_t c = 0; c < w.cells(); ++c) out[c] = f(static_cast<long double>(w.density(c)));
  return out;
}

void require_positive_cells(const GridWeight& w, Errc code, const char* what) {
  for (auto u : w.units())
    if (u <= 0) fail(code, what);
}

long double cells_in(const GridWeight& w, const GridCube& q) { return std::pow(static_cast<long double>(q.side), w.dim()); }

}  // namespace

GridWeight::GridWeight(int dim, int resolution, const std::vector<double>& masses, WeightMeta meta)
    : dim_(dim), n_(resolution), meta_(std::move(meta)) {
  require(dim == 1 || dim == 2, Errc::invalid_argument, "grid weights are 1-D or 2-D");
  require(resolution >= 1, Errc::invalid_resolution, "resolution must be positive");
  require(masses.size() == ipow(std::size_t(resolution), dim), Errc::invalid_argument,
          "value count does not match resolution^dim");
  long double total = 0;
  for (double m : masses) {
    require(std::isfinite(m) && m >= 0, Errc::invalid_argument, "cell masses must be finite and nonnegative");
    total += m;
  }
  require(total > 0, Errc::degenerate_weight, "total mass must be positive");
  int k = 60 - static_cast<int>(std::ceil(std::log2(static_cast<double>(total))));
  unit_mass_ = std::ldexp(1.0, -k);
  units_.resize(masses.size());
  for (std::size_t c = 0; c < masses.size(); ++c) {
    double scaled = std::ldexp(masses[c], k);
    auto u = static_cast<std::int64_t>(std::llround(scaled));
    if (u == 0 && masses[c] > 0) u = 1;
    units_[c] = u;
  }
  build_prefix();
}

GridWeight GridWeight::lebesgue(int dim, int resolution) {
  require(dim == 1 || dim == 2, Errc::invalid_argument, "grid weights are 1-D or 2-D");
  require(resolution >= 1, Errc::invalid_resolution, "resolution must be positive");
  GridWeight w;
  w.dim_ = dim;
  w.n_ = resolution;
  w.units_.assign(ipow(std::size_t(resolution), dim), 1);
  w.unit_mass_ = 1.0 / static_cast<double>(w.units_.size());
  w.meta_.family = "lebesgue";
  w.build_prefix();
  return w;
}

void GridWeight::build_prefix() {
  if (dim_ == 1) {
    prefix_.assign(n_ + 1, 0);
    for (int i = 0; i < n_; ++i) prefix_[i + 1] = prefix_[i] + units_[i];
    return;
  }
  const int m = n_ + 1;
  prefix_.assign(std::size_t(m) * m, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      prefix_[(i + 1) * m + j + 1] =
          units_[index(i, j)] + prefix_[i * m + j + 1] + prefix_[(i + 1) * m + j] - prefix_[i * m + j];
}

std::vector<double> GridWeight::values() const {
  std::vector<double> v(units_.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = cell_mass(c);
  return v;
}

double GridWeight::density(std::size_t cell) const {
  return cell_mass(cell) * static_cast<double>(units_.size());
}

void GridWeight::check_cube(const GridCube& q) const {
  bool ok = q.side >= 1 && q.side <= n_;
  for (int a = 0; a < dim_; ++a) ok = ok && q.corner[a] >= 0 && q.corner[a] + q.side <= n_;
  if (dim_ == 1) ok = ok && q.corner[1] == 0;
  if (!ok) fail(Errc::invalid_argument, "grid cube outside the grid");
}

__int128 GridWeight::mass_units(const GridCube& q) const {
  check_cube(q);
  const int x = q.corner[0], s = q.side;
  if (dim_ == 1) return prefix_[x + s] - prefix_[x];
  const int y = q.corner[1], m = n_ + 1;
  return prefix_[(x + s) * m + y + s] - prefix_[x * m + y + s] - prefix_[(x + s) * m + y] + prefix_[x * m + y];
}

double GridWeight::mass(const GridCube& q) const { return static_cast<double>(mass_units(q)) * unit_mass_; }

double GridWeight::total_mass() const { return static_cast<double>(total_units()) * unit_mass_; }

double GridWeight::volume(const GridCube& q) const {
  return std::pow(static_cast<double>(q.side) / n_, dim_);
}

// ---------------------------------------------------------------------------

std::string family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::constant: return "constant";
    case WeightFamily::power: return "power";
    case WeightFamily::checkerboard: return "checkerboard";
    case WeightFamily::log_smooth_random: return "log-smooth-random";
  }
  return "constant";
}

WeightFamily parse_family(const std::string& name) {
  if (name == "constant") return WeightFamily::constant;
  if (name == "power") return WeightFamily::power;
  if (name == "checkerboard") return WeightFamily::checkerboard;
  if (name == "log-smooth-random") return WeightFamily::log_smooth_random;
  fail(Errc::invalid_argument, "unknown weight family '" + name + "'");
}

namespace {

double power_antiderivative(double u, double a) {
  double v = std::pow(std::abs(u), a + 1) / (a + 1);
  return u < 0 ? -v : v;
}

std::vector<double> smooth_log_field(const WeightFamilySpec& spec) {
  const int n = spec.resolution, dim = spec.dim;
  const std::size_t cells = ipow(std::size_t(n), dim);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> g(cells);
  for (auto& x : g) x = normal(rng);

  const int r = std::max(0, spec.smoothness);
  auto blur = [&](std::vector<double>& f, bool along_rows) {
    std::vector<double> out(cells);
    const int lines = dim == 1 ? 1 : n;
    for (int l = 0; l < lines; ++l) {
      for (int i = 0; i < n; ++i) {
        double s = 0;
        int cnt = 0;
        for (int k = std::max(0, i - r); k <= std::min(n - 1, i + r); ++k) {
          std::size_t idx = dim == 1 ? k : (along_rows ? std::size_t(l) * n + k : std::size_t(k) * n + l);
          s += f[idx];
          ++cnt;
        }
        std::size_t at = dim == 1 ? i : (along_rows ? std::size_t(l) * n + i : std::size_t(i) * n + l);
        out[at] = s / cnt;
      }
    }
    f.swap(out);
  };
  blur(g, true);
  if (dim == 2) blur(g, false);

  double mean = std::accumulate(g.begin(), g.end(), 0.0) / cells;
  double var = 0;
  for (double x : g) var += (x - mean) * (x - mean);
  double sd = std::sqrt(var / cells);
  if (sd == 0) sd = 1;
  for (auto& x : g) x = spec.amplitude * (x - mean) / sd;
  return g;
}

}  // namespace

GridWeight generate_weight(const WeightFamilySpec& spec) {
  const int n = spec.resolution, dim = spec.dim;
  require(dim == 1 || dim == 2, Errc::invalid_argument, "grid weights are 1-D or 2-D");
  require(n >= 1, Errc::invalid_resolution, "resolution must be positive");
  const std::size_t cells = ipow(std::size_t(n), dim);
  const double cell_volume = 1.0 / static_cast<double>(cells);
  std::vector<double> masses(cells);

  switch (spec.family) {
    case WeightFamily::constant:
      std::fill(masses.begin(), masses.end(), cell_volume);
      break;
    case WeightFamily::power: {
      const double a = spec.exponent;
      if (!(a > -dim)) fail(Errc::integrability_violation, "power weight needs exponent > -dim");
      if (dim == 1) {
        for (int i = 0; i < n; ++i) {
          double lo = static_cast<double>(i) / n - spec.center[0];
          double hi = static_cast<double>(i + 1) / n - spec.center[0];
          masses[i] = power_antiderivative(hi, a) - power_antiderivative(lo, a);
        }
      } else {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double dx = (i + 0.5) / n - spec.center[0];
            double dy = (j + 0.5) / n - spec.center[1];
            double r = std::hypot(dx, dy);
            if (r == 0 && a < 0) fail(Errc::integrability_violation, "power center sits on a cell midpoint");
            masses[std::size_t(i) * n + j] = (a == 0 ? 1.0 : std::pow(r, a)) * cell_volume;
          }
      }
      break;
    }
    case WeightFamily::checkerboard: {
      require(spec.levels >= 0 && spec.levels <= 20, Errc::invalid_argument, "checkerboard levels out of range");
      require(spec.contrast > 0, Errc::invalid_argument, "checkerboard contrast must be positive");
      const long blocks = 1L << spec.levels;
      for (std::size_t c = 0; c < cells; ++c) {
        long i = dim == 1 ? long(c) : long(c / n);
        long j = dim == 1 ? 0 : long(c % n);
        long bi = i * blocks / n, bj = j * blocks / n;
        masses[c] = ((bi + bj) % 2 == 0 ? 1.0 : spec.contrast) * cell_volume;
      }
      break;
    }
    case WeightFamily::log_smooth_random: {
      auto g = smooth_log_field(spec);
      for (std::size_t c = 0; c < cells; ++c) masses[c] = std::exp(g[c]) * cell_volume;
      break;
    }
  }
  return GridWeight(dim, n, masses, WeightMeta{family_name(spec.family), spec.seed});
}

// ---------------------------------------------------------------------------

double ap_constant(const GridWeight& w, double p) {
  require(p > 1, Errc::invalid_argument, "A_p needs p > 1");
  require_positive_cells(w, Errc::dual_undefined, "dual weight undefined on a zero cell");
  const long double e = -1.0L / (p - 1);
  PrefixTable dual(w.dim(), w.resolution(), map_densities(w, [&](long double d) { return std::pow(d, e); }));
  double best = 0;
  w.for_each_cube([&](const GridCube& q) {
    long double avg_dual = dual.sum(q) / cells_in(w, q);
    double v = static_cast<double>(static_cast<long double>(w.average(q)) * std::pow(avg_dual, p - 1));
    best = std::max(best, v);
  });
  return best;
}

double hruscev_constant(const GridWeight& w) {
  require_positive_cells(w, Errc::log_undefined, "log w undefined on a zero cell");
  PrefixTable logs(w.dim(), w.resolution(), map_densities(w, [](long double d) { return -std::log(d); }));
  double best = 0;
  w.for_each_cube([&](const GridCube& q) {
    long double avg_log = logs.sum(q) / cells_in(w, q);
    double v = static_cast<double>(static_cast<long double>(w.average(q)) * std::exp(avg_log));
    best = std::max(best, v);
  });
  return best;
}

double doubling_constant(const GridWeight& w) {
  const int n = w.resolution();
  if (n < 4) fail(Errc::domain_too_small, "doubling constant needs N >= 4");
  double best = 0;
  bool any = false;
  for (int s = 2; 2 * s <= n; s += 2) {
    const int h = s / 2;
    for (int x = h; x + s + h <= n; ++x) {
      for (int y = (w.dim() == 1 ? 0 : h); w.dim() == 1 ? y == 0 : y + s + h <= n; ++y) {
        GridCube q{{x, y}, s};
        GridCube q2{{x - h, w.dim() == 1 ? 0 : y - h}, 2 * s};
        __int128 m1 = w.mass_units(q), m2 = w.mass_units(q2);
        any = true;
        if (m1 == 0) {
          if (m2 > 0) return std::numeric_limits<double>::infinity();
          continue;
        }
        best = std::max(best, static_cast<double>(m2) / static_cast<double>(m1));
      }
    }
  }
  if (!any) fail(Errc::domain_too_small, "no cube has its double inside the domain");
  return best;
}

namespace {

double fujii_wilson_1d(const GridWeight& w) {
  const int n = w.resolution();
  std::vector<long double> s(n + 1, 0);
  for (int i = 0; i < n; ++i) s[i + 1] = s[i] + static_cast<long double>(w.units()[i]);
  std::vector<long double> m(n);
  double best = 0;
  for (int a = 0; a < n; ++a) {
    std::fill(m.begin(), m.end(), 0.0L);
    for (int b = a + 1; b <= n; ++b) {
      long double run = 0, total = 0;
      for (int p = a; p < b; ++p) {
        run = std::max(run, (s[b] - s[p]) / (b - p));
        m[p] = std::max(m[p], run);
        total += m[p];
      }
      long double mass = s[b] - s[a];
      if (mass > 0) best = std::max(best, static_cast<double>(total / mass));
    }
  }
  return best;
}

// For each cell of a line of length len, the max of vals over windows of
// width t that contain it; vals has len - t + 1 entries (window positions).
void window_max(const long double* vals, int len, int t, long double* out) {
  const int positions = len - t + 1;
  for (int c = 0; c < len; ++c) {
    long double mx = 0;
    for (int p = std::max(0, c - t + 1); p <= std::min(c, positions - 1); ++p) mx = std::max(mx, vals[p]);
    out[c] = mx;
  }
}

double fujii_wilson_2d(const GridWeight& w) {
  const int n = w.resolution();
  std::vector<long double> cellv(w.cells());
  for (std::size_t c = 0; c < w.cells(); ++c) cellv[c] = static_cast<long double>(w.units()[c]);
  PrefixTable units(2, n, cellv);
  double best = 0;
  std::vector<long double> a, b(n * n), m(n * n), tmp(n), out(n);
  for (int s = 1; s <= n; ++s) {
    for (int x = 0; x + s <= n; ++x)
      for (int y = 0; y + s <= n; ++y) {
        long double mass = units.sum(GridCube{{x, y}, s});
        if (mass <= 0) continue;
        std::fill(m.begin(), m.begin() + s * s, 0.0L);
        for (int t = 1; t <= s; ++t) {
          const int pos = s - t + 1;
          const long double vol = static_cast<long double>(t) * t;
          a.assign(std::size_t(pos) * pos, 0);
          for (int i = 0; i < pos; ++i)
            for (int j = 0; j < pos; ++j) a[i * pos + j] = units.sum(GridCube{{x + i, y + j}, t}) / vol;
          // along the second axis: b[i][cj]
          for (int i = 0; i < pos; ++i) {
            window_max(&a[i * pos], s, t, out.data());
            for (int cj = 0; cj < s; ++cj) b[i * s + cj] = out[cj];
          }
          // along the first axis
          for (int cj = 0; cj < s; ++cj) {
            for (int i = 0; i < pos; ++i) tmp[i] = b[i * s + cj];
            window_max(tmp.data(), s, t, out.data());
            for (int ci = 0; ci < s; ++ci) m[ci * s + cj] = std::max(m[ci * s + cj], out[ci]);
          }
        }
        long double total = 0;
        for (int c = 0; c < s * s; ++c) total += m[c];
        best = std::max(best, static_cast<double>(total / mass));
      }
  }
  return best;
}

}  // namespace

double fujii_wilson(const GridWeight& w) {
  if (w.dim() == 1 && w.resolution() > kFwCap1d) fail(Errc::budget_exceeded, "fujii-wilson: N > 512 in 1-D");
  if (w.dim() == 2 && w.resolution() > kFwCap2d) fail(Errc::budget_exceeded, "fujii-wilson: N > 32 in 2-D");
  return w.dim() == 1 ? fujii_wilson_1d(w) : fujii_wilson_2d(w);
}

std::map<double, double> growth_profile(const GridWeight& w, const std::vector<double>& t_values) {
  require(!t_values.empty(), Errc::invalid_argument, "growth profile needs t values");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    require(t_values[i] > 0 && t_values[i] <= 1, Errc::invalid_argument, "t must lie in (0,1]");
    if (i > 0) require(t_values[i] > t_values[i - 1], Errc::invalid_argument, "t values must be ascending");
  }
  std::vector<double> best(t_values.size(), 0.0);
  auto fold = [&](const std::vector<std::int64_t>& sorted_desc, long double mass) {
    if (mass <= 0) return;
    const long double cells = static_cast<long double>(sorted_desc.size());
    long double acc = 0;
    std::size_t taken = 0;
    for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
      auto k = static_cast<std::size_t>(std::floor(t_values[ti] * cells + 1e-9L));
      while (taken < k) acc += static_cast<long double>(sorted_desc[taken++]);
      best[ti] = std::max(best[ti], static_cast<double>(acc / mass));
    }
  };

  const int n = w.resolution();
  std::vector<std::int64_t> cells;
  if (w.dim() == 1) {
    for (int a = 0; a < n; ++a) {
      cells.clear();
      long double mass = 0;
      for (int b = a; b < n; ++b) {
        auto u = w.units()[b];
        cells.insert(std::upper_bound(cells.begin(), cells.end(), u, std::greater<>()), u);
        mass += static_cast<long double>(u);
        fold(cells, mass);
      }
    }
  } else {
    w.for_each_cube([&](const GridCube& q) {
      cells.clear();
      for (int i = 0; i < q.side; ++i)
        for (int j = 0; j < q.side; ++j) cells.push_back(w.units()[w.index(q.corner[0] + i, q.corner[1] + j)]);
      std::sort(cells.begin(), cells.end(), std::greater<>());
      fold(cells, static_cast<long double>(w.mass_units(q)));
    });
  }
  std::map<double, double> out;
  for (std::size_t i = 0; i < t_values.size(); ++i) out[t_values[i]] = best[i];
  return out;
}

GrowthFit fit_growth_exponent(const std::map<double, double>& profile) {
  std::vector<double> xs, ys;
  for (auto [t, phi] : profile) {
    if (t >= 0.5 || phi <= 0) continue;
    xs.push_back(std::log(t));
    ys.push_back(std::log(phi));
  }
  if (xs.size() < 3) fail(Errc::fit_degenerate, "growth fit needs at least 3 points with t < 1/2 and phi > 0");
  if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); }))
    fail(Errc::fit_degenerate, "growth profile is flat");
  LinearFit f = least_squares(xs, ys);
  if (!(f.slope > 0)) fail(Errc::fit_degenerate, "growth profile does not increase with t");
  GrowthFit g;
  g.c2 = 1.0 / f.slope;
  g.c1 = std::exp(f.intercept);
  g.ainfty_bound = g.c2 * (1 + std::log(g.c1));
  g.points_used = xs.size();
  return g;
}

ReverseHolder reverse_holder_exponent(const GridWeight& w, double constant) {
  require(constant >= 1, Errc::invalid_argument, "reverse Hoelder constant must be >= 1");
  PrefixTable dens(w.dim(), w.resolution(), map_densities(w, [](long double d) { return d; }));
  for (int k = 0; k <= 20; ++k) {
    const long double eps = std::ldexp(1.0L, -k);
    PrefixTable powers(w.dim(), w.resolution(), map_densities(w, [&](long double d) { return std::pow(d, 1 + eps); }));
    bool ok = true;
    w.for_each_cube([&](const GridCube& q) {
      if (!ok) return;
      const long double cells = cells_in(w, q);
      long double avg = dens.sum(q) / cells;
      if (avg <= 0) return;
      long double lhs = std::pow(powers.sum(q) / cells, 1 / (1 + eps));
      if (lhs > constant * avg * (1 + 1e-12L)) ok = false;
    });
    if (ok) return {static_cast<double>(eps), ""};
  }
  return {0.0, "no candidate epsilon in {2^-k : k = 0..20} passes with constant " + std::to_string(constant)};
}

double sidelength_growth_exponent(const GridWeight& w, bool concentric_only) {
  const int n = w.resolution();
  if (n < 8) fail(Errc::domain_too_small, "sidelength growth exponent needs N >= 8");
  std::vector<double> logs(n + 1, 0);
  for (int s = 1; s <= n; ++s) logs[s] = std::log(static_cast<double>(s));
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  const int corners = w.dim() == 1 ? 2 : 4;
  w.for_each_cube([&](const GridCube& q2) {
    const __int128 m2 = w.mass_units(q2);
    const int s2 = q2.side;
    for (int s1 = 1; s1 < s2; ++s1) {
      const int d = s2 - s1;
      auto consider = [&](GridCube q1) {
        const __int128 m1 = w.mass_units(q1);
        if (m1 <= 0) return;
        any = true;
        double v = std::log(static_cast<double>(m2) / static_cast<double>(m1)) / (logs[s2] - logs[s1]);
        best = std::max(best, v);
      };
      if (d % 2 == 0) {
        GridCube q1{{q2.corner[0] + d / 2, w.dim() == 1 ? 0 : q2.corner[1] + d / 2}, s1};
        consider(q1);
      }
      if (concentric_only) continue;
      for (int c = 0; c < corners; ++c) {
        GridCube q1{{q2.corner[0] + ((c & 1) ? d : 0), w.dim() == 1 ? 0 : q2.corner[1] + ((c & 2) ? d : 0)}, s1};
        consider(q1);
      }
    }
  });
  if (!any) fail(Errc::degenerate_weight, "every inner cube has zero mass");
  return best;
}

const std::vector<double>& default_growth_ts() {
  static const std::vector<double> ts{1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4};
  return ts;
}

WeightConstants compute_constants(const GridWeight& w, const std::vector<double>& ps) {
  WeightConstants c;
  for (double p : ps) c.ap[p] = ap_constant(w, p);
  c.fujii_wilson = fujii_wilson(w);
  c.hruscev = hruscev_constant(w);
  c.doubling = doubling_constant(w);
  c.rh_epsilon = reverse_holder_exponent(w).epsilon;
  c.gamma = sidelength_growth_exponent(w);
  c.growth = fit_growth_exponent(growth_profile(w, default_growth_ts()));
  return c;
}

}  // namespace tlab
