#include "tauberian/maximal.hpp"

#include <algorithm>

#include "tauberian/errors.hpp"

namespace tlab {

GridSet::GridSet(int d, int n) : dim(d), resolution(n) {
  require(d == 1 || d == 2, Errc::invalid_argument, "grid sets are 1-D or 2-D");
  require(n >= 1, Errc::invalid_resolution, "resolution must be positive");
  cells.assign(d == 1 ? std::size_t(n) : std::size_t(n) * n, 0);
}

GridSet GridSet::from_indices(int d, int n, const std::vector<std::size_t>& idx) {
  GridSet e(d, n);
  for (auto i : idx) {
    require(i < e.size(), Errc::invalid_argument, "cell index out of range");
    e.cells[i] = 1;
  }
  return e;
}

GridSet GridSet::full(int d, int n) {
  GridSet e(d, n);
  std::fill(e.cells.begin(), e.cells.end(), 1);
  return e;
}

std::size_t GridSet::count() const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1)); }

bool GridSet::subset_of(const GridSet& other) const {
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c] && !other.cells[c]) return false;
  return true;
}

std::vector<std::size_t> GridSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c]) out.push_back(c);
  return out;
}

GridSet lift(const GridSet& e, int factor) {
  require(factor >= 1, Errc::invalid_argument, "lift factor must be positive");
  const int n = e.resolution, m = n * factor;
  GridSet out(e.dim, m);
  for (std::size_t c = 0; c < out.size(); ++c) {
    std::size_t src = e.dim == 1 ? c / factor : (c / m / factor) * n + (c % m) / factor;
    out.cells[c] = e.cells[src];
  }
  return out;
}

GridWeight lift(const GridWeight& w, int factor) {
  require(factor >= 1, Errc::invalid_argument, "lift factor must be positive");
  const int n = w.resolution(), m = n * factor;
  const std::size_t cells = w.dim() == 1 ? std::size_t(m) : std::size_t(m) * m;
  const double split = w.dim() == 1 ? factor : double(factor) * factor;
  std::vector<double> v(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t src = w.dim() == 1 ? c / factor : (c / m / factor) * n + (c % m) / factor;
    v[c] = w.cell_mass(src) / split;
  }
  return GridWeight(w.dim(), m, v, w.meta());
}

const char* variant_name(MaximalVariant v) {
  switch (v) {
    case MaximalVariant::uncentered: return "uncentered";
    case MaximalVariant::centered: return "centered";
    case MaximalVariant::dyadic: return "dyadic";
  }
  return "uncentered";
}

MaximalVariant parse_variant(const std::string& name) {
  if (name == "uncentered") return MaximalVariant::uncentered;
  if (name == "centered") return MaximalVariant::centered;
  if (name == "dyadic") return MaximalVariant::dyadic;
  fail(Errc::invalid_argument, "unknown maximal variant '" + name + "'");
}

__int128 set_units(const GridWeight& mu, const GridSet& e) {
  __int128 s = 0;
  for (std::size_t c = 0; c < e.size(); ++c)
    if (e.cells[c]) s += mu.units()[c];
  return s;
}

namespace {

void check_pair(const GridWeight& mu, const GridSet& e) {
  require(mu.dim() == e.dim && mu.resolution() == e.resolution, Errc::invalid_argument,
          "set and measure live on different grids");
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// mu(Q n E) for grid cubes, via a summed table over the E-restricted units.
class MaskedMass {
 public:
  MaskedMass(const GridWeight& mu, const GridSet& e) : dim_(mu.dim()), n_(mu.resolution()) {
    if (dim_ == 1) {
      t_.assign(n_ + 1, 0);
      for (int i = 0; i < n_; ++i) t_[i + 1] = t_[i] + (e.cells[i] ? mu.units()[i] : 0);
    } else {
      const int m = n_ + 1;
      t_.assign(std::size_t(m) * m, 0);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          std::size_t c = std::size_t(i) * n_ + j;
          t_[(i + 1) * m + j + 1] = (e.cells[c] ? mu.units()[c] : 0) + t_[i * m + j + 1] + t_[(i + 1) * m + j] - t_[i * m + j];
        }
    }
  }
  __int128 operator()(const GridCube& q) const {
    const int x = q.corner[0], s = q.side;
    if (dim_ == 1) return t_[x + s] - t_[x];
    const int y = q.corner[1], m = n_ + 1;
    return t_[(x + s) * m + y + s] - t_[x * m + y + s] - t_[(x + s) * m + y] + t_[x * m + y];
  }

 private:
  int dim_, n_;
  std::vector<__int128> t_;
};

// Calls f(cube) for every cube admissible for the variant (uncentered and
// dyadic); centered cubes are handled per cell.
template <class F>
void for_each_admissible(MaximalVariant v, const GridWeight& mu, F f) {
  const int n = mu.resolution();
  if (v == MaximalVariant::uncentered) {
    mu.for_each_cube(f);
    return;
  }
  if (v == MaximalVariant::dyadic) {
    if (!is_power_of_two(n)) fail(Errc::invalid_resolution, "dyadic maximal operator needs N a power of 2");
    for (int s = 1; s <= n; s *= 2)
      for (int x = 0; x < n; x += s) {
        if (mu.dim() == 1) {
          f(GridCube{{x, 0}, s});
          continue;
        }
        for (int y = 0; y < n; y += s) f(GridCube{{x, y}, s});
      }
    return;
  }
  for (int s = 1; s <= n; s += 2)
    for (int x = 0; x + s <= n; ++x) {
      if (mu.dim() == 1) {
        f(GridCube{{x, 0}, s});
        continue;
      }
      for (int y = 0; y + s <= n; ++y) f(GridCube{{x, y}, s});
    }
}

template <class F>
void for_cells_of(const GridWeight& mu, const GridCube& q, F f) {
  const int n = mu.resolution();
  if (mu.dim() == 1) {
    for (int i = 0; i < q.side; ++i) f(std::size_t(q.corner[0] + i));
    return;
  }
  for (int i = 0; i < q.side; ++i)
    for (int j = 0; j < q.side; ++j) f(std::size_t(q.corner[0] + i) * n + q.corner[1] + j);
}

std::size_t center_cell(const GridWeight& mu, const GridCube& q) {
  const int r = q.side / 2;
  if (mu.dim() == 1) return std::size_t(q.corner[0] + r);
  return std::size_t(q.corner[0] + r) * mu.resolution() + q.corner[1] + r;
}

// O(N) uncentered superlevel in 1-D. With G(x) = den mu_E[0,x) - num mu[0,x),
// cell c lies in some good interval [a,b) iff max_{b>c} G(b) > min_{a<=c} G(a).
GridSet superlevel_uncentered_1d(const GridWeight& mu, const GridSet& e, SmallFraction a) {
  const int n = mu.resolution();
  std::vector<__int128> g(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    __int128 u = mu.units()[i];
    g[i + 1] = g[i] + (e.cells[i] ? __int128(a.den) * u : 0) - __int128(a.num) * u;
  }
  std::vector<__int128> suffix_max(n + 1);
  suffix_max[n] = g[n];
  for (int i = n - 1; i >= 0; --i) suffix_max[i] = std::max(g[i], suffix_max[i + 1]);
  GridSet out(1, n);
  __int128 prefix_min = g[0];
  for (int c = 0; c < n; ++c) {
    prefix_min = std::min(prefix_min, g[c]);
    if (suffix_max[c + 1] > prefix_min) out.cells[c] = 1;
  }
  return out;
}

}  // namespace

std::vector<double> grid_maximal(MaximalVariant variant, const GridWeight& mu, const GridSet& e) {
  check_pair(mu, e);
  MaskedMass inside(mu, e);
  std::vector<double> vals(e.size(), 0.0);
  for_each_admissible(variant, mu, [&](const GridCube& q) {
    __int128 total = mu.mass_units(q);
    if (total <= 0) return;
    double r = static_cast<double>(inside(q)) / static_cast<double>(total);
    if (variant == MaximalVariant::centered) {
      auto c = center_cell(mu, q);
      vals[c] = std::max(vals[c], r);
    } else {
      for_cells_of(mu, q, [&](std::size_t c) { vals[c] = std::max(vals[c], r); });
    }
  });
  return vals;
}

GridSet superlevel(MaximalVariant variant, const GridWeight& mu, const GridSet& e, const Rat& alpha) {
  check_pair(mu, e);
  require(alpha > 0, Errc::invalid_argument, "alpha must be positive");
  if (alpha >= 1) return GridSet(e.dim, e.resolution);
  SmallFraction a = small_fraction(alpha);
  require(a.den < (std::int64_t(1) << 62), Errc::invalid_argument, "alpha denominator too large");
  if (variant == MaximalVariant::uncentered && mu.dim() == 1) return superlevel_uncentered_1d(mu, e, a);

  MaskedMass inside(mu, e);
  auto good = [&](const GridCube& q) {
    __int128 total = mu.mass_units(q);
    return total > 0 && __int128(a.den) * inside(q) > __int128(a.num) * total;
  };
  const int n = mu.resolution();
  GridSet out(e.dim, n);
  if (variant == MaximalVariant::centered) {
    for_each_admissible(variant, mu, [&](const GridCube& q) {
      if (good(q)) out.cells[center_cell(mu, q)] = 1;
    });
    return out;
  }
  if (mu.dim() == 1) {
    std::vector<int> diff(n + 1, 0);
    for_each_admissible(variant, mu, [&](const GridCube& q) {
      if (!good(q)) return;
      ++diff[q.corner[0]];
      --diff[q.corner[0] + q.side];
    });
    int run = 0;
    for (int i = 0; i < n; ++i) {
      run += diff[i];
      out.cells[i] = run > 0;
    }
    return out;
  }
  const int m = n + 1;
  std::vector<int> diff(std::size_t(m) * m, 0);
  for_each_admissible(variant, mu, [&](const GridCube& q) {
    if (!good(q)) return;
    const int x = q.corner[0], y = q.corner[1], s = q.side;
    ++diff[x * m + y];
    --diff[(x + s) * m + y];
    --diff[x * m + y + s];
    ++diff[(x + s) * m + y + s];
  });
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = diff[i * m + j];
      if (i > 0) v += diff[(i - 1) * m + j];
      if (j > 0) v += diff[i * m + j - 1];
      if (i > 0 && j > 0) v -= diff[(i - 1) * m + j - 1];
      diff[i * m + j] = v;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.cells[std::size_t(i) * n + j] = diff[i * m + j] > 0;
  return out;
}

}  // namespace tlab
