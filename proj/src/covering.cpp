#include "tauberian/covering.hpp"

#include <algorithm>
#include <numeric>

#include "tauberian/errors.hpp"

namespace tlab {

const char* kind_name(SelectionKind k) {
  switch (k) {
    case SelectionKind::vitali: return "vitali";
    case SelectionKind::cf_lebesgue: return "cf-lebesgue";
    case SelectionKind::cf_weighted: return "cf-weighted";
  }
  return "vitali";
}

SelectionKind parse_kind(const std::string& name) {
  if (name == "vitali") return SelectionKind::vitali;
  if (name == "cf-lebesgue") return SelectionKind::cf_lebesgue;
  if (name == "cf-weighted") return SelectionKind::cf_weighted;
  fail(Errc::invalid_argument, "unknown selection kind '" + name + "'");
}

BoxFamily SelectionResult::selected_family() const {
  std::vector<Box> out;
  for (auto i : selected) out.push_back(input.boxes[i]);
  return BoxFamily(std::move(out), input.ordering == Ordering::decreasing_sidelength || kind == SelectionKind::vitali
                                       ? Ordering::decreasing_sidelength
                                       : Ordering::unordered);
}

SelectionResult vitali_select(const BoxFamily& f) {
  SelectionResult r;
  r.kind = SelectionKind::vitali;
  r.input = f;
  r.scan_order = BoxFamily::decreasing_order(f.boxes);
  for (auto i : r.scan_order) {
    const Box& q = f.boxes[i];
    std::optional<std::size_t> hit;
    for (auto s : r.selected)
      if (f.boxes[s].intersects(q)) {
        hit = s;
        break;
      }
    if (!hit) {
      r.selected.push_back(i);
    } else {
      r.rejected.push_back(i);
      r.certificates.push_back({i, hit, Rat(0)});
    }
  }
  return r;
}

namespace {

void require_decreasing(const BoxFamily& f) {
  if (f.ordering != Ordering::decreasing_sidelength || !f.is_nonincreasing())
    fail(Errc::ordering_violation, "selection needs a decreasing-sidelength family");
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

template <class F>
void for_cells(const GridCube& q, int dim, int n, F f) {
  if (dim == 1) {
    for (int i = 0; i < q.side; ++i) f(std::size_t(q.corner[0] + i));
    return;
  }
  for (int i = 0; i < q.side; ++i)
    for (int j = 0; j < q.side; ++j) f(std::size_t(q.corner[0] + i) * n + q.corner[1] + j);
}

std::vector<GridCube> grid_cubes_of(const BoxFamily& f, const GridWeight& w) {
  std::vector<GridCube> out;
  for (const auto& b : f.boxes) {
    auto q = as_grid_cube(b, w);
    if (!q) fail(Errc::unsupported_geometry, "weighted selection needs grid-aligned cubes inside the domain");
    out.push_back(*q);
  }
  return out;
}

__int128 masked_units(const GridCube& q, const GridWeight& w, const std::vector<char>& mask) {
  __int128 s = 0;
  for_cells(q, w.dim(), w.resolution(), [&](std::size_t c) {
    if (mask[c]) s += w.units()[c];
  });
  return s;
}

}  // namespace

SelectionResult cf_select_lebesgue(const BoxFamily& f, const Rat& delta) {
  require(delta > 0 && delta < 1, Errc::invalid_argument, "delta must lie in (0,1)");
  require_decreasing(f);
  SelectionResult r;
  r.kind = SelectionKind::cf_lebesgue;
  r.input = f;
  r.scan_order = identity_order(f.size());
  const Rat keep = 1 - delta;
  BoxRegion sel(f.empty() ? 1 : f.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Box& q = f.boxes[i];
    Rat frac = sel.has_pieces() ? Rat(intersection_measure(BoxRegion::from_box(q), sel) / q.volume()) : Rat(0);
    if (frac <= keep) {
      if (frac == keep) r.equality_accepted.push_back(i);
      r.selected.push_back(i);
      sel.add_piece(q, {});
    } else {
      r.rejected.push_back(i);
      r.certificates.push_back({i, std::nullopt, frac});
    }
  }
  return r;
}

std::optional<GridCube> as_grid_cube(const Box& b, const GridWeight& w) {
  if (b.dim() != std::size_t(w.dim())) return std::nullopt;
  const int n = w.resolution();
  Rat side = b.side() * n;
  if (side.get_den() != 1 || side > n) return std::nullopt;
  GridCube q;
  q.side = static_cast<int>(side.get_num().get_si());
  for (std::size_t a = 0; a < b.dim(); ++a) {
    Rat lo = b.lo(a) * n;
    if (lo.get_den() != 1 || lo < 0 || lo + side > n) return std::nullopt;
    q.corner[a] = static_cast<int>(lo.get_num().get_si());
  }
  return q;
}

Box to_box(const GridCube& q, int dim, int resolution) {
  std::vector<Rat> lower;
  for (int a = 0; a < dim; ++a) lower.push_back(make_rat(q.corner[a], resolution));
  return Box::from_corner(std::move(lower), make_rat(q.side, resolution));
}

SelectionResult cf_select_weighted(const BoxFamily& f, const GridWeight& w, const Rat& xi) {
  require(xi > 0 && xi < 1, Errc::invalid_argument, "xi must lie in (0,1)");
  require_decreasing(f);
  auto cubes = grid_cubes_of(f, w);
  SmallFraction x = small_fraction(xi);
  require(x.den < (std::int64_t(1) << 62), Errc::invalid_argument, "xi denominator too large");
  SelectionResult r;
  r.kind = SelectionKind::cf_weighted;
  r.input = f;
  r.scan_order = identity_order(f.size());
  std::vector<char> mask(w.cells(), 0);
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const GridCube& q = cubes[i];
    __int128 mass = w.mass_units(q);
    __int128 overlap = masked_units(q, w, mask);
    // overlap <= (1 - xi) mass
    __int128 lhs = overlap * x.den, rhs = mass * (x.den - x.num);
    if (lhs <= rhs) {
      if (lhs == rhs) r.equality_accepted.push_back(i);
      r.selected.push_back(i);
      for_cells(q, w.dim(), w.resolution(), [&](std::size_t c) { mask[c] = 1; });
    } else {
      r.rejected.push_back(i);
      r.certificates.push_back({i, std::nullopt, rat_from_int128(overlap, mass)});
    }
  }
  return r;
}

std::map<std::size_t, BoxFamily> satellite_decompose(const BoxFamily& f) {
  auto v = vitali_select(f);
  std::map<std::size_t, BoxFamily> out;
  for (auto c : v.selected) {
    const Box& center = f.boxes[c];
    std::vector<Box> members{center};
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j == c) continue;
      if (f.boxes[j].intersects(center) && f.boxes[j].side() <= center.side()) members.push_back(f.boxes[j]);
    }
    out.emplace(c, BoxFamily(std::move(members), Ordering::unordered));
  }
  return out;
}

std::vector<std::size_t> overlap2_select_1d(const std::vector<Interval>& intervals) {
  for (const auto& i : intervals) require(i.lo < i.hi, Errc::invalid_argument, "interval needs lo < hi");
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (intervals[a].lo != intervals[b].lo) return intervals[a].lo < intervals[b].lo;
    return intervals[a].hi > intervals[b].hi;
  });
  std::vector<std::size_t> chosen;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t cur = order[i++];
    chosen.push_back(cur);
    Rat end = intervals[cur].hi;
    for (;;) {
      std::optional<std::size_t> best;
      while (i < order.size() && intervals[order[i]].lo <= end) {
        if (!best || intervals[order[i]].hi > intervals[*best].hi) best = order[i];
        ++i;
      }
      if (!best || intervals[*best].hi <= end) break;
      chosen.push_back(*best);
      end = intervals[*best].hi;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// ---------------------------------------------------------------------------

bool ContractReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

namespace {

Clause partition_clause(const SelectionResult& r) {
  Clause c{"partition", true, Rat(0), ""};
  std::vector<int> seen(r.input.size(), 0);
  long bad = 0;
  for (const auto* list : {&r.selected, &r.rejected})
    for (auto i : *list) {
      if (i < seen.size())
        ++seen[i];
      else
        ++bad;
    }
  for (int s : seen)
    if (s != 1) ++bad;
  if (r.certificates.size() != r.rejected.size()) {
    ++bad;
    c.detail = "certificate count differs from rejected count";
  }
  for (std::size_t k = 0; k < r.certificates.size() && k < r.rejected.size(); ++k)
    if (r.certificates[k].rejected != r.rejected[k]) ++bad;
  c.pass = bad == 0;
  c.defect = bad;
  return c;
}

std::vector<std::size_t> positions(const SelectionResult& r) {
  std::vector<std::size_t> pos(r.input.size(), 0);
  for (std::size_t k = 0; k < r.scan_order.size(); ++k)
    if (r.scan_order[k] < pos.size()) pos[r.scan_order[k]] = k;
  return pos;
}

void vitali_clauses(const SelectionResult& r, ContractReport& rep) {
  const auto& b = r.input.boxes;
  Clause disjoint{"disjoint", true, Rat(0), ""};
  for (std::size_t x = 0; x < r.selected.size(); ++x)
    for (std::size_t y = x + 1; y < r.selected.size(); ++y) {
      const Box& p = b[r.selected[x]];
      const Box& q = b[r.selected[y]];
      if (p.intersects(q)) {
        disjoint.pass = false;
        disjoint.defect += intersection_measure(BoxRegion::from_box(p), BoxRegion::from_box(q));
      }
    }
  rep.clauses.push_back(disjoint);

  Clause cert{"certificates", true, Rat(0), ""};
  for (const auto& c : r.certificates) {
    bool ok = c.by && std::find(r.selected.begin(), r.selected.end(), *c.by) != r.selected.end() &&
              b[*c.by].intersects(b[c.rejected]) && b[*c.by].side() >= b[c.rejected].side();
    if (!ok) {
      cert.pass = false;
      cert.defect += 1;
    }
  }
  rep.clauses.push_back(cert);

  Clause cover{"cover-by-3-dilates", true, Rat(0), ""};
  if (!r.input.empty()) {
    std::vector<Box> tripled;
    for (auto i : r.selected) tripled.push_back(dilate(b[i], Rat(3)));
    Rat miss = difference_measure(BoxRegion::from_boxes(b, r.input.dim()),
                                  BoxRegion::from_boxes(tripled, r.input.dim()));
    cover.defect = miss;
    cover.pass = miss == 0;
  }
  rep.clauses.push_back(cover);
}

void cf_lebesgue_clauses(const SelectionResult& r, const Rat& delta, ContractReport& rep) {
  const auto& b = r.input.boxes;
  const std::size_t dim = r.input.empty() ? 1 : r.input.dim();
  auto pos = positions(r);

  Clause inc{"increments", true, Rat(0), ""};
  BoxRegion before(dim);
  for (std::size_t k = 0; k < r.selected.size(); ++k) {
    const Box& q = b[r.selected[k]];
    if (k > 0) {
      Rat fresh = difference_measure(BoxRegion::from_box(q), before);
      Rat need = delta * q.volume();
      if (fresh < need) {
        inc.pass = false;
        inc.defect = std::max(inc.defect, Rat(need - fresh));
      }
    }
    before.add_piece(q, {});
  }
  rep.clauses.push_back(inc);

  Clause cert{"certificates-replay", true, Rat(0), ""};
  for (const auto& c : r.certificates) {
    BoxRegion sel(dim);
    for (auto s : r.selected)
      if (pos[s] < pos[c.rejected]) sel.add_piece(b[s], {});
    const Box& q = b[c.rejected];
    Rat frac = sel.has_pieces() ? Rat(intersection_measure(BoxRegion::from_box(q), sel) / q.volume()) : Rat(0);
    if (frac != c.overlap_fraction || frac <= 1 - delta) {
      cert.pass = false;
      cert.defect += 1;
    }
  }
  rep.clauses.push_back(cert);
}

void cf_weighted_clauses(const SelectionResult& r, const Rat& xi, const GridWeight& w, ContractReport& rep) {
  auto cubes = grid_cubes_of(r.input, w);
  auto pos = positions(r);
  SmallFraction x = small_fraction(xi);

  Clause inc{"increments", true, Rat(0), ""};
  std::vector<char> mask(w.cells(), 0);
  std::size_t equalities = 0;
  for (std::size_t k = 0; k < r.selected.size(); ++k) {
    const GridCube& q = cubes[r.selected[k]];
    __int128 mass = w.mass_units(q);
    if (k > 0) {
      __int128 fresh = mass - masked_units(q, w, mask);
      // fresh >= xi mass
      __int128 lhs = fresh * x.den, rhs = mass * x.num;
      if (lhs < rhs) {
        inc.pass = false;
        inc.defect = std::max(inc.defect, rat_from_int128(rhs - lhs, __int128(x.den) * (mass > 0 ? mass : 1)));
      } else if (lhs == rhs) {
        ++equalities;
      }
    }
    for_cells(q, w.dim(), w.resolution(), [&](std::size_t c) { mask[c] = 1; });
  }
  if (equalities > 0) inc.detail = std::to_string(equalities) + " acceptance(s) with equality";
  rep.clauses.push_back(inc);

  Clause cert{"certificates-replay", true, Rat(0), ""};
  for (const auto& c : r.certificates) {
    std::fill(mask.begin(), mask.end(), 0);
    for (auto s : r.selected)
      if (pos[s] < pos[c.rejected])
        for_cells(cubes[s], w.dim(), w.resolution(), [&](std::size_t cell) { mask[cell] = 1; });
    const GridCube& q = cubes[c.rejected];
    __int128 mass = w.mass_units(q), overlap = masked_units(q, w, mask);
    bool ok = mass > 0 && rat_from_int128(overlap, mass) == c.overlap_fraction &&
              overlap * x.den > mass * (x.den - x.num);
    if (!ok) {
      cert.pass = false;
      cert.defect += 1;
    }
  }
  rep.clauses.push_back(cert);
}

}  // namespace

ContractReport verify_selection_contract(const SelectionResult& r, const Rat& param, const GridWeight* w) {
  ContractReport rep;
  rep.clauses.push_back(partition_clause(r));
  switch (r.kind) {
    case SelectionKind::vitali:
      vitali_clauses(r, rep);
      break;
    case SelectionKind::cf_lebesgue:
      require(param > 0 && param < 1, Errc::invalid_argument, "delta must lie in (0,1)");
      cf_lebesgue_clauses(r, param, rep);
      break;
    case SelectionKind::cf_weighted:
      require(param > 0 && param < 1, Errc::invalid_argument, "xi must lie in (0,1)");
      require(w != nullptr, Errc::invalid_argument, "cf-weighted verification needs the weight");
      cf_weighted_clauses(r, param, *w, rep);
      break;
  }
  return rep;
}

ContractReport verify_overlap2(const std::vector<Interval>& intervals, const std::vector<std::size_t>& chosen) {
  ContractReport rep;
  std::vector<Interval> picked;
  for (auto i : chosen) {
    require(i < intervals.size(), Errc::invalid_argument, "chosen index out of range");
    picked.push_back(intervals[i]);
  }
  IntervalSet all(intervals), sub(picked);
  Clause uni{"union-preserved", true, Rat(0), ""};
  uni.defect = all.measure() - all.intersect(sub).measure() + sub.measure() - sub.intersect(all).measure();
  uni.pass = all == sub;
  rep.clauses.push_back(uni);

  Clause overlap{"interior-overlap-at-most-2", true, Rat(0), ""};
  std::vector<Rat> pts;
  for (const auto& p : picked) {
    pts.push_back(p.lo);
    pts.push_back(p.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  long worst = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    Rat mid = (pts[k] + pts[k + 1]) / 2;
    long cnt = 0;
    for (const auto& p : picked)
      if (p.lo < mid && mid < p.hi) ++cnt;
    worst = std::max(worst, cnt);
  }
  overlap.pass = worst <= 2;
  overlap.defect = worst > 2 ? worst - 2 : 0;
  overlap.detail = "max interior multiplicity " + std::to_string(worst);
  rep.clauses.push_back(overlap);
  return rep;
}

}  // namespace tlab
