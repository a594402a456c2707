#include "tauberian/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tauberian/errors.hpp"

namespace tlab {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    require(a.mass > 0, Errc::invalid_argument, "atom masses must be positive");
    require(!a.point.empty() && a.point.size() == atoms_.front().point.size() && a.point.size() <= kMaxGeometryDim,
            Errc::invalid_argument, "atoms must share a dimension in 1..3");
  }
  std::vector<const std::vector<Rat>*> pts;
  for (const auto& a : atoms_) pts.push_back(&a.point);
  std::sort(pts.begin(), pts.end(), [](auto* x, auto* y) { return *x < *y; });
  for (std::size_t i = 1; i < pts.size(); ++i)
    require(*pts[i] != *pts[i - 1], Errc::invalid_argument, "atom points must be distinct");
}

Rat AtomicMeasure::mass(const std::vector<std::size_t>& subset) const {
  Rat m = 0;
  for (auto i : subset) m += atoms_.at(i).mass;
  return m;
}

BoxFamily default_pair_candidates(const AtomicMeasure& mu, const std::vector<std::size_t>& e) {
  const std::size_t n = mu.dim();
  std::vector<Box> out;
  std::set<std::pair<std::vector<Rat>, Rat>> seen;
  for (auto ei : e) {
    const auto& p = mu.atoms()[ei].point;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (j == ei) continue;
      const auto& q = mu.atoms()[j].point;
      Rat side = 0;
      for (std::size_t a = 0; a < n; ++a) side = std::max(side, Rat(abs(p[a] - q[a])));
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Rat> lower(n);
        for (std::size_t a = 0; a < n; ++a) {
          Rat lo = std::min(p[a], q[a]);
          Rat hi = std::max(p[a], q[a]);
          lower[a] = (mask >> a) & 1u ? Rat(hi - side) : lo;
        }
        if (!seen.emplace(lower, side).second) continue;
        out.push_back(Box::from_corner(std::move(lower), side));
      }
    }
  }
  return BoxFamily(std::move(out), Ordering::unordered);
}

namespace {

struct ApproxAtom {
  std::array<double, kMaxGeometryDim> x{};
  double mass = 0;
};

// Closed containment; doubles decide unless a coordinate is within slack of a face.
bool box_contains(const Box& b, const std::array<double, kMaxGeometryDim>& blo,
                  const std::array<double, kMaxGeometryDim>& bhi, const ApproxAtom& a, const Atom& exact) {
  constexpr double slack = 1e-9;
  bool uncertain = false;
  for (std::size_t ax = 0; ax < b.dim(); ++ax) {
    const double scale = std::max({1.0, std::abs(blo[ax]), std::abs(bhi[ax])});
    if (a.x[ax] < blo[ax] - slack * scale || a.x[ax] > bhi[ax] + slack * scale) return false;
    if (std::abs(a.x[ax] - blo[ax]) <= slack * scale || std::abs(a.x[ax] - bhi[ax]) <= slack * scale) uncertain = true;
  }
  return uncertain ? b.contains(exact.point) : true;
}

}  // namespace

AtomicHalo atomic_maximal_lower(const AtomicMeasure& mu, const std::vector<std::size_t>& e, const Rat& alpha,
                                const std::optional<BoxFamily>& candidates) {
  require(!e.empty(), Errc::invalid_argument, "E must contain at least one atom");
  require(alpha > 0 && alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  for (auto i : e) require(i < mu.size(), Errc::invalid_argument, "E atom index out of range");
  const BoxFamily cands = candidates ? *candidates : default_pair_candidates(mu, e);
  if (!cands.empty()) require(cands.dim() == mu.dim(), Errc::invalid_argument, "candidate dimension mismatch");

  std::vector<char> in_e(mu.size(), 0);
  for (auto i : e) in_e[i] = 1;
  std::vector<ApproxAtom> approx(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t a = 0; a < mu.dim(); ++a) approx[i].x[a] = to_double(mu.atoms()[i].point[a]);
    approx[i].mass = to_double(mu.atoms()[i].mass);
  }
  // Heavy atoms first so the ratio test can stop early.
  std::vector<std::size_t> order(mu.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mu.atoms()[a].mass > mu.atoms()[b].mass; });

  AtomicHalo out;
  std::vector<char> reached(in_e);
  const Rat ratio_cap = (1 - alpha) / alpha;  // good iff mu(B \ E) < ratio_cap mu(B n E)
  std::vector<std::size_t> inside;
  for (std::size_t bi = 0; bi < cands.size(); ++bi) {
    const Box& b = cands.boxes[bi];
    ++out.candidates_tested;
    std::array<double, kMaxGeometryDim> blo{}, bhi{};
    for (std::size_t a = 0; a < b.dim(); ++a) {
      blo[a] = to_double(b.lo(a));
      bhi[a] = to_double(b.hi(a));
    }
    Rat in_mass = 0;
    for (auto i : e)
      if (box_contains(b, blo, bhi, approx[i], mu.atoms()[i])) in_mass += mu.atoms()[i].mass;
    if (in_mass == 0) continue;
    const Rat cap = ratio_cap * in_mass;
    const double cap_d = to_double(cap);
    Rat out_mass = 0;
    double out_d = 0;
    bool good = true;
    inside.clear();
    for (auto i : order) {
      if (in_e[i]) continue;
      if (!box_contains(b, blo, bhi, approx[i], mu.atoms()[i])) continue;
      inside.push_back(i);
      out_d += approx[i].mass;
      if (out_d > cap_d * (1 + 1e-9)) {
        good = false;
        break;
      }
      out_mass += mu.atoms()[i].mass;
    }
    if (good && out_mass >= cap) good = false;
    if (!good) continue;
    for (auto i : inside)
      if (!reached[i]) {
        reached[i] = 1;
        out.witnesses.emplace_back(i, bi);
      }
  }
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (reached[i]) {
      out.halo_atoms.push_back(i);
      out.halo_mass_lower += mu.atoms()[i].mass;
    }
  return out;
}

}  // namespace tlab
