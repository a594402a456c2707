#include "tauberian/pipelines.hpp"

#include <algorithm>
#include <cmath>

#include "tauberian/errors.hpp"

namespace tlab {

bool UpperBoundReport::all_pass() const {
  return std::all_of(links.begin(), links.end(), [](const Link& l) { return l.pass; });
}

bool HaloDecomposition::all_pass() const {
  return total_check && std::all_of(links.begin(), links.end(), [](const Link& l) { return l.pass; }) &&
         std::all_of(satellites.begin(), satellites.end(), [](const SatelliteCheck& s) { return s.pass; });
}

Rat default_delta(const Rat& alpha) {
  require(alpha > 0 && alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  const long scale = 1L << 20;
  Rat d = make_rat(static_cast<long>(std::ceil(std::sqrt(to_double(1 - alpha)) * scale)), scale);
  const Rat floor = 1 - alpha;
  if (d <= floor) d = (floor + 1) / 2;
  if (d >= 1) d = (floor + 1) / 2;
  return d;
}

namespace {

using Mask = std::vector<char>;

template <class F>
void for_cells(const GridCube& q, int dim, int n, F f) {
  if (dim == 1) {
    for (int i = 0; i < q.side; ++i) f(std::size_t(q.corner[0] + i));
    return;
  }
  for (int i = 0; i < q.side; ++i)
    for (int j = 0; j < q.side; ++j) f(std::size_t(q.corner[0] + i) * n + q.corner[1] + j);
}

// Summed table of w restricted to E.
class RestrictedMass {
 public:
  RestrictedMass(const GridWeight& w, const GridSet& e) : dim_(w.dim()), n_(w.resolution()) {
    const std::size_t m = n_ + 1;
    table_.assign(dim_ == 1 ? m : m * m, 0);
    if (dim_ == 1) {
      for (int i = 0; i < n_; ++i) table_[i + 1] = table_[i] + (e.cells[i] ? w.units()[i] : 0);
      return;
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        std::size_t c = std::size_t(i) * n_ + j;
        __int128 v = e.cells[c] ? w.units()[c] : 0;
        table_[(i + 1) * m + j + 1] = v + table_[i * m + j + 1] + table_[(i + 1) * m + j] - table_[i * m + j];
      }
  }

  __int128 operator()(const GridCube& q) const {
    const int x = q.corner[0], s = q.side;
    if (dim_ == 1) return table_[x + s] - table_[x];
    const std::size_t m = n_ + 1;
    const int y = q.corner[1];
    return table_[(x + s) * m + y + s] - table_[x * m + y + s] - table_[(x + s) * m + y] + table_[x * m + y];
  }

 private:
  int dim_, n_;
  std::vector<__int128> table_;
};

Rat mass_of(const GridWeight& w, __int128 units) { return rat_from_int128(units, 1) * Rat(w.unit_mass()); }

__int128 mask_units(const GridWeight& w, const Mask& m) {
  __int128 s = 0;
  for (std::size_t c = 0; c < m.size(); ++c)
    if (m[c]) s += w.units()[c];
  return s;
}

// Grid cubes with op(Q n E) > alpha op(Q), in decreasing side order.
std::vector<GridCube> cover_cubes(const GridWeight& op, const GridSet& e, const Rat& alpha) {
  SmallFraction a = small_fraction(alpha);
  require(a.den < (std::int64_t(1) << 62), Errc::invalid_argument, "alpha denominator too large");
  RestrictedMass inside(op, e);
  std::vector<GridCube> out;
  op.for_each_cube([&](const GridCube& q) {
    if (inside(q) * a.den > op.mass_units(q) * a.num) out.push_back(q);
  });
  std::stable_sort(out.begin(), out.end(), [](const GridCube& p, const GridCube& q) { return p.side > q.side; });
  return out;
}

struct Replay {
  std::vector<GridCube> cover, chosen;
  std::vector<std::size_t> chosen_index;  // positions in cover
  Mask cover_union, chosen_union;
  Rat dilation;
  Mask snapped;  // cells whose interior meets some tQ~
  bool triple_covers = true;
};

Mask union_mask(const std::vector<GridCube>& cubes, int dim, int n) {
  Mask m(dim == 1 ? std::size_t(n) : std::size_t(n) * n, 0);
  for (const auto& q : cubes) for_cells(q, dim, n, [&](std::size_t c) { m[c] = 1; });
  return m;
}

BoxRegion mask_region(const Mask& m, int dim, int n) {
  std::vector<Box> cells;
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!m[c]) continue;
    GridCube q{{dim == 1 ? int(c) : int(c / n), dim == 1 ? 0 : int(c % n)}, 1};
    cells.push_back(to_box(q, dim, n));
  }
  return BoxRegion::from_boxes(cells, dim);
}

Mask snap(const std::vector<Box>& boxes, int dim, int n) {
  Mask m(dim == 1 ? std::size_t(n) : std::size_t(n) * n, 0);
  for (const auto& b : boxes) {
    int lo[2] = {0, 0}, hi[2] = {1, 1};
    for (int a = 0; a < dim; ++a) {
      Rat l = b.lo(a) * n, h = b.hi(a) * n;
      Int fl, ce;
      mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
      mpz_cdiv_q(ce.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
      lo[a] = static_cast<int>(std::max<long>(0, fl.get_si()));
      hi[a] = static_cast<int>(std::min<long>(n, ce.get_si()));
    }
    for (int i = lo[0]; i < hi[0]; ++i)
      for (int j = lo[1]; j < hi[1]; ++j) m[dim == 1 ? std::size_t(i) : std::size_t(i) * n + j] = 1;
  }
  return m;
}

// Runs the selection at the given level and measures the minimal dilation
// t in {1 + k/256 : k <= 512} with union Q inside union tQ~.
Replay replay(const GridWeight& op, const GridSet& e, const Rat& alpha, const Rat& level) {
  const int dim = op.dim(), n = op.resolution();
  Replay r;
  r.cover = cover_cubes(op, e, alpha);
  std::vector<Box> boxes;
  for (const auto& q : r.cover) boxes.push_back(to_box(q, dim, n));
  BoxFamily fam(boxes, Ordering::decreasing_sidelength);
  auto sel = cf_select_weighted(fam, op, level);
  for (auto i : sel.selected) {
    r.chosen.push_back(r.cover[i]);
    r.chosen_index.push_back(i);
  }
  r.cover_union = union_mask(r.cover, dim, n);
  r.chosen_union = union_mask(r.chosen, dim, n);

  auto dilated = [&](long k) {
    std::vector<Box> out;
    Rat t = 1 + make_rat(k, 256);
    for (const auto& q : r.chosen) out.push_back(dilate(to_box(q, dim, n), t));
    return out;
  };
  if (r.chosen.empty()) {
    r.dilation = 1;
    r.snapped = r.chosen_union;
    return r;
  }
  BoxRegion target = mask_region(r.cover_union, dim, n);
  auto covers = [&](long k) {
    auto d = dilated(k);
    return covered_by(target, BoxRegion::from_boxes(d, dim));
  };
  long lo = 0, hi = 512;
  if (!covers(hi)) {
    r.triple_covers = false;
  } else if (covers(lo)) {
    hi = 0;
  } else {
    while (hi - lo > 1) {
      long mid = (lo + hi) / 2;
      (covers(mid) ? hi : lo) = mid;
    }
  }
  r.dilation = 1 + make_rat(hi, 256);
  r.snapped = snap(dilated(hi), dim, n);
  return r;
}

Link link(std::string name, Rat lhs, Rat rhs, bool strict = false) {
  bool pass = strict ? lhs < rhs : lhs <= rhs;
  return {std::move(name), pass, std::move(lhs), std::move(rhs)};
}

void check_instance(const GridWeight& w, const GridSet& e, const Rat& alpha) {
  require(alpha > 0 && alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  require(e.dim == w.dim() && e.resolution == w.resolution(), Errc::invalid_argument, "set and weight grids differ");
}

}  // namespace

UpperBoundReport upper_bound_pipeline(const GridWeight& w, const GridSet& e, const Rat& alpha, const Rat& xi) {
  check_instance(w, e, alpha);
  if (xi <= 1 - alpha) fail(Errc::division_degenerate, "xi must exceed 1 - alpha");
  require(xi < 1, Errc::invalid_argument, "xi must be below 1");
  const __int128 we = set_units(w, e);
  require(we > 0, Errc::degenerate_weight, "E has zero weight");
  const int dim = w.dim(), n = w.resolution();

  UpperBoundReport out;
  out.alpha = alpha;
  out.xi = xi;
  Replay r = replay(w, e, alpha, xi);
  out.cover_cubes = r.cover.size();
  out.selected = r.chosen.size();
  out.dilation = r.dilation;

  GridSet k = superlevel(MaximalVariant::uncentered, w, e, alpha);
  const Rat wk = mass_of(w, set_units(w, k));
  const Rat wE = mass_of(w, we);
  const Rat w_cover = mass_of(w, mask_units(w, r.cover_union));
  const Rat w_sel = mass_of(w, mask_units(w, r.chosen_union));
  const Rat w_snap = mass_of(w, mask_units(w, r.snapped));

  out.links.push_back({"cover-equals-superlevel", Mask(k.cells.begin(), k.cells.end()) == r.cover_union, wk, w_cover});
  out.links.push_back(link("w(K) <= w(union Q)", wk, w_cover));
  out.links.push_back({"union Q inside union tQ~ (t <= 3)", r.triple_covers, r.dilation, Rat(3)});
  out.links.push_back(link("w(union Q) <= w(snap union tQ~)", w_cover, w_snap));

  // Increments in selection order, as cell masks.
  Mask seen(r.cover_union.size(), 0);
  Rat sum_inc = 0, sum_inc_e = 0;
  bool per_cube = true;
  Link worst{"xi w(E~_j n E) > (xi - (1 - alpha)) w(E~_j)", true, 0, 0};
  for (const auto& q : r.chosen) {
    __int128 inc = 0, inc_e = 0;
    for_cells(q, dim, n, [&](std::size_t c) {
      if (seen[c]) return;
      seen[c] = 1;
      inc += w.units()[c];
      if (e.cells[c]) inc_e += w.units()[c];
    });
    Rat lhs = (xi - (1 - alpha)) * mass_of(w, inc), rhs = xi * mass_of(w, inc_e);
    if (!(lhs < rhs) && per_cube) {
      per_cube = false;
      worst = {worst.name, false, lhs, rhs};
    }
    sum_inc += mass_of(w, inc);
    sum_inc_e += mass_of(w, inc_e);
  }
  out.links.push_back({"w(union Q~) = sum w(E~_j)", sum_inc == w_sel, sum_inc, w_sel});
  out.links.push_back(worst);
  out.links.push_back(link("(xi - (1 - alpha)) w(union Q~) <= xi w(E)", (xi - (1 - alpha)) * w_sel, xi * wE));

  out.enlargement = w_sel > 0 ? Rat(w_snap / w_sel) : Rat(1);
  out.cover_ratio = w_sel > 0 ? Rat(w_cover / w_sel) : Rat(1);
  out.bound = out.enlargement * xi / (xi - (1 - alpha));
  out.measured = wk / wE;
  out.links.push_back(link("measured ratio <= bound", out.measured, out.bound));
  return out;
}

HaloDecomposition weighted_halo_decomposition(const GridWeight& w, const GridSet& e, const Rat& alpha,
                                              const Rat& delta_in) {
  check_instance(w, e, alpha);
  const Rat delta = delta_in == 0 ? default_delta(alpha) : delta_in;
  require(delta > 1 - alpha && delta < 1, Errc::invalid_argument, "delta must lie in (1 - alpha, 1)");
  const int dim = w.dim(), n = w.resolution();
  require(e.count() > 0, Errc::invalid_argument, "E must be nonempty");
  GridWeight leb = GridWeight::lebesgue(dim, n);

  HaloDecomposition out;
  out.alpha = alpha;
  out.delta = delta;
  Replay r = replay(leb, e, alpha, delta);
  out.cover_cubes = r.cover.size();
  out.selected = r.chosen.size();
  out.dilation = r.dilation;

  GridSet k = superlevel(MaximalVariant::uncentered, leb, e, alpha);
  out.halo_mass = mass_of(w, set_units(w, k));
  out.set_mass = mass_of(w, set_units(w, e));
  Mask beyond(r.snapped.size(), 0), outside(r.snapped.size(), 0);
  for (std::size_t c = 0; c < beyond.size(); ++c) {
    beyond[c] = r.snapped[c] && !r.chosen_union[c];
    outside[c] = r.chosen_union[c] && !e.cells[c];
  }
  out.term_i = mass_of(w, mask_units(w, beyond));
  out.term_ii = mass_of(w, mask_units(w, outside));
  out.total_check = out.halo_mass <= out.set_mass + out.term_i + out.term_ii;

  out.links.push_back({"cover-equals-superlevel", Mask(k.cells.begin(), k.cells.end()) == r.cover_union,
                       Rat(k.count()), Rat(std::count(r.cover_union.begin(), r.cover_union.end(), 1))});
  out.links.push_back({"union Q inside union tQ~ (t <= 3)", r.triple_covers, r.dilation, Rat(3)});
  bool inside = true;
  for (std::size_t c = 0; c < r.cover_union.size(); ++c)
    if (r.cover_union[c] && !r.snapped[c]) inside = false;
  out.links.push_back({"K inside snap(union tQ~)", inside, 0, 0});
  out.links.push_back(link("w(K) <= w(E) + I + II", out.halo_mass, out.set_mass + out.term_i + out.term_ii));

  // Satellite split of the selected cubes. Each family keeps the global
  // selection order so its increments inherit the selection inequality.
  std::vector<Box> chosen_boxes;
  for (const auto& q : r.chosen) chosen_boxes.push_back(to_box(q, dim, n));
  if (chosen_boxes.empty()) return out;
  BoxFamily chosen_fam(chosen_boxes, Ordering::decreasing_sidelength);
  auto centers = vitali_select(chosen_fam);
  for (auto ci : centers.selected) {
    const GridCube& rc = r.chosen[ci];
    const Box& rb = chosen_boxes[ci];
    Mask u(r.cover_union.size(), 0);
    SatelliteCheck s;
    s.center = ci;
    for (std::size_t j = 0; j < r.chosen.size(); ++j) {
      if (r.chosen[j].side > rc.side || !chosen_boxes[j].intersects(rb)) continue;
      ++s.members;
      for_cells(r.chosen[j], dim, n, [&](std::size_t c) { u[c] = 1; });
    }
    long in_u = 0, out_e = 0;
    for (std::size_t c = 0; c < u.size(); ++c) {
      if (!u[c]) continue;
      ++in_u;
      if (!e.cells[c]) ++out_e;
    }
    const long cells_total = dim == 1 ? n : long(n) * n;
    s.outside = make_rat(out_e, cells_total);
    s.union_measure = make_rat(in_u, cells_total);
    s.pass = delta * s.outside <= (1 - alpha) * s.union_measure;
    out.satellites.push_back(s);
  }
  return out;
}

}  // namespace tlab
