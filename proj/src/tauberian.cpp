#include "tauberian/tauberian.hpp"

#include <algorithm>
#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/parallel.hpp"

namespace tlab {

const char* setting_name(Setting s) {
  switch (s) {
    case Setting::lebesgue: return "lebesgue";
    case Setting::weighted_operator: return "weighted-operator";
    case Setting::weighted_ambient: return "weighted-ambient";
  }
  return "lebesgue";
}

const char* engine_name(Engine e) { return e == Engine::grid ? "grid" : "exact-1d"; }

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::exhaustive: return "exhaustive";
    case Strategy::structured: return "structured";
    case Strategy::local_search: return "local-search";
    case Strategy::structured_local_search: return "structured+local-search";
  }
  return "structured";
}

Setting parse_setting(const std::string& s) {
  if (s == "lebesgue") return Setting::lebesgue;
  if (s == "weighted-operator") return Setting::weighted_operator;
  if (s == "weighted-ambient") return Setting::weighted_ambient;
  fail(Errc::invalid_argument, "unknown setting '" + s + "'");
}

Engine parse_engine(const std::string& s) {
  if (s == "grid") return Engine::grid;
  if (s == "exact-1d") return Engine::exact_1d;
  fail(Errc::invalid_argument, "unknown engine '" + s + "'");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "exhaustive") return Strategy::exhaustive;
  if (s == "structured") return Strategy::structured;
  if (s == "local-search") return Strategy::local_search;
  if (s == "structured+local-search") return Strategy::structured_local_search;
  fail(Errc::invalid_argument, "unknown strategy '" + s + "'");
}

std::size_t TauberianEstimate::witness_size() const {
  if (grid_witness) return grid_witness->count();
  if (interval_witness) return interval_witness->intervals().size();
  return 0;
}

namespace {

struct Ratio {
  __int128 num = 0, den = 1;
  friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
};

Rat to_rat(const Ratio& r) { return rat_from_int128(r.num, r.den); }
Rat to_rat(const Rat& r) { return r; }

void check_query(const TauberianQuery& q, const GridWeight* w) {
  require(q.alpha > 0 && q.alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  require(q.dim == 1 || q.dim == 2, Errc::invalid_argument, "dimension must be 1 or 2");
  require(q.resolution >= 1, Errc::invalid_resolution, "resolution must be positive");
  if (q.setting != Setting::lebesgue) {
    require(w != nullptr, Errc::invalid_argument, "weighted settings need a weight");
    require(w->dim() == q.dim && w->resolution() == q.resolution, Errc::invalid_argument,
            "weight grid does not match the query grid");
    require(w->total_units() > 0, Errc::degenerate_weight, "weight has zero mass");
  }
  if (q.engine == Engine::exact_1d) require(q.dim == 1, Errc::invalid_argument, "exact engine is 1-D");
}

class GridEval {
 public:
  GridEval(const TauberianQuery& q, const GridWeight* w)
      : alpha_(q.alpha), lebesgue_(GridWeight::lebesgue(q.dim, q.resolution)) {
    op_ = q.setting == Setting::weighted_operator ? w : &lebesgue_;
    amb_ = q.setting == Setting::lebesgue ? &lebesgue_ : w;
  }
  GridEval(const GridEval&) = delete;

  std::optional<Ratio> operator()(const GridSet& e) const {
    __int128 me = set_units(*amb_, e);
    if (me == 0) return std::nullopt;
    GridSet k = superlevel(MaximalVariant::uncentered, *op_, e, alpha_);
    return Ratio{set_units(*amb_, k), me};
  }

 private:
  Rat alpha_;
  GridWeight lebesgue_;
  const GridWeight* op_;
  const GridWeight* amb_;
};

IntervalSet cells_to_intervals(const GridSet& e) {
  std::vector<Interval> iv;
  const int n = e.resolution;
  for (int i = 0; i < n;) {
    if (!e.cells[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && e.cells[j]) ++j;
    iv.push_back({make_rat(i, n), make_rat(j, n)});
    i = j;
  }
  return IntervalSet(std::move(iv));
}

class ExactEval {
 public:
  ExactEval(const TauberianQuery& q, const GridWeight* w) : alpha_(q.alpha), setting_(q.setting) {
    if (q.setting != Setting::lebesgue) pw_.emplace(PiecewiseWeight1D::from_grid(*w));
  }

  std::optional<Rat> operator()(const GridSet& e) const {
    if (e.count() == 0) return std::nullopt;
    IntervalSet set = cells_to_intervals(e);
    const PiecewiseWeight1D* op = setting_ == Setting::weighted_operator ? &*pw_ : nullptr;
    IntervalSet halo = exact_halo_1d(set, alpha_, op);
    if (setting_ == Setting::lebesgue) return halo.measure() / set.measure();
    Rat me = pw_->measure(set);
    if (me == 0) return std::nullopt;
    return pw_->measure(halo.clip(pw_->lo(), pw_->hi())) / me;
  }

 private:
  Rat alpha_;
  Setting setting_;
  std::optional<PiecewiseWeight1D> pw_;
};

template <class S>
struct Best {
  std::optional<S> score;
  GridSet set;

  // Higher score wins; ties go to the lexicographically smaller cell vector.
  bool offer(const S& s, const GridSet& e) {
    if (!score || *score < s || (s == *score && e.cells < set.cells)) {
      score = s;
      set = e;
      return true;
    }
    return false;
  }
};

// Calls f on structured candidates until it returns false.
template <class F>
void structured_candidates(int dim, int n, F f) {
  GridSet e(dim, n);
  auto paint = [&](int x, int y, int s) {
    for (int i = 0; i < s; ++i) {
      if (dim == 1) {
        e.cells[x + i] = 1;
        continue;
      }
      for (int j = 0; j < s; ++j) e.cells[std::size_t(x + i) * n + y + j] = 1;
    }
  };
  auto clear = [&] { std::fill(e.cells.begin(), e.cells.end(), 0); };

  // single cubes
  for (int s = 1; s <= n; ++s)
    for (int x = 0; x + s <= n; ++x)
      for (int y = 0; dim == 1 ? y == 0 : y + s <= n; ++y) {
        clear();
        paint(x, y, s);
        if (!f(e)) return;
      }
  // pairs of equal cubes with geometric sides and gaps
  for (int s = 1; 2 * s < n; s *= 2)
    for (int g = 1; 2 * s + g <= n; g *= 2) {
      const int span = 2 * s + g;
      const int dirs = dim == 1 ? 1 : 3;
      for (int d = 0; d < dirs; ++d) {
        const int dx = d == 1 ? 0 : s + g;
        const int dy = dim == 1 ? 0 : (d == 0 ? 0 : s + g);
        for (int x = 0; x + (dx ? span : s) <= n; ++x)
          for (int y = 0; dim == 1 ? y == 0 : y + (dy ? span : s) <= n; ++y) {
            clear();
            paint(x, y, s);
            paint(x + dx, y + dy, s);
            if (!f(e)) return;
          }
      }
    }
  // middle-thirds Cantor sets (products in 2-D), depth 1..4
  for (int depth = 1, pow3 = 3; depth <= 4 && pow3 <= n; ++depth, pow3 *= 3) {
    for (int m = 1; pow3 * m <= n; ++m) {
      const int len = pow3 * m;
      auto keep = [&](int i) {
        int k = i / m;
        for (int t = 0; t < depth; ++t, k /= 3)
          if (k % 3 == 1) return false;
        return true;
      };
      for (int x = 0; x + len <= n; x += m)
        for (int y = 0; dim == 1 ? y == 0 : y + len <= n; y += m) {
          clear();
          for (int i = 0; i < len; ++i) {
            if (!keep(i)) continue;
            if (dim == 1) {
              e.cells[x + i] = 1;
              continue;
            }
            for (int j = 0; j < len; ++j)
              if (keep(j)) e.cells[std::size_t(x + i) * n + y + j] = 1;
          }
          if (!f(e)) return;
        }
    }
  }
}

template <class Eval>
auto run_search(const TauberianQuery& q, const Eval& eval, const std::vector<GridSet>& warm,
                TauberianEstimate& est) {
  using S = typename std::invoke_result_t<const Eval&, const GridSet&>::value_type;
  Best<S> best;
  const int n = q.resolution;
  const std::size_t cells = q.dim == 1 ? std::size_t(n) : std::size_t(n) * n;

  if (q.strategy == Strategy::exhaustive) {
    if (cells > kExhaustiveMaxCells)
      fail(Errc::budget_exceeded, "exhaustive search is limited to " + std::to_string(kExhaustiveMaxCells) + " cells");
    const std::uint64_t total = (std::uint64_t(1) << cells) - 1;
    const unsigned chunks = thread_count();
    std::vector<Best<S>> partial(chunks);
    std::vector<std::size_t> counts(chunks, 0);
    parallel_chunks(
        total,
        [&](std::size_t b, std::size_t e, unsigned c) {
          GridSet set(q.dim, n);
          for (std::size_t k = b; k < e; ++k) {
            std::uint64_t mask = k + 1;
            for (std::size_t i = 0; i < cells; ++i) set.cells[i] = (mask >> i) & 1u;
            auto s = eval(set);
            ++counts[c];
            if (s) partial[c].offer(*s, set);
          }
        },
        chunks);
    for (unsigned c = 0; c < chunks; ++c) {
      est.evaluations += counts[c];
      if (partial[c].score) best.offer(*partial[c].score, partial[c].set);
    }
  }

  if (q.strategy == Strategy::structured || q.strategy == Strategy::structured_local_search) {
    std::size_t used = 0;
    structured_candidates(q.dim, n, [&](const GridSet& e) {
      if (used >= q.budget) {
        est.budget_exhausted = true;
        return false;
      }
      ++used;
      if (auto s = eval(e)) best.offer(*s, e);
      return true;
    });
    est.evaluations += used;
  }

  if (q.strategy == Strategy::local_search || q.strategy == Strategy::structured_local_search) {
    if (!q.seed) fail(Errc::invalid_argument, "local search needs a seed");
    std::vector<GridSet> starts = warm;
    if (best.score) starts.push_back(best.set);
    const std::size_t total_starts = std::max<std::size_t>(starts.size(), std::size_t(std::max(q.restarts, 1)));
    std::size_t used = 0;
    for (std::size_t r = 0; r < total_starts && used < q.budget; ++r) {
      GridSet cur(q.dim, n);
      if (r < starts.size()) {
        cur = starts[r];
      } else {
        std::mt19937_64 rng(split_seed(*q.seed, "local-search-restart", r));
        const int max_side = std::max(1, q.dim == 1 ? n / 8 : n / 4);
        int s = std::uniform_int_distribution<int>(1, max_side)(rng);
        int x = std::uniform_int_distribution<int>(0, n - s)(rng);
        int y = q.dim == 1 ? 0 : std::uniform_int_distribution<int>(0, n - s)(rng);
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < (q.dim == 1 ? 1 : s); ++j)
            cur.cells[q.dim == 1 ? std::size_t(x + i) : std::size_t(x + i) * n + y + j] = 1;
      }
      auto cur_score = eval(cur);
      ++used;
      if (!cur_score) continue;
      best.offer(*cur_score, cur);
      for (;;) {
        std::optional<S> step_best;
        std::size_t step_cell = cells;
        for (std::size_t c = 0; c < cells && used < q.budget; ++c) {
          cur.cells[c] ^= 1;
          auto s = eval(cur);
          ++used;
          cur.cells[c] ^= 1;
          if (s && *cur_score < *s && (!step_best || *step_best < *s)) {
            step_best = s;
            step_cell = c;
          }
        }
        if (!step_best) break;
        cur.cells[step_cell] ^= 1;
        cur_score = step_best;
        best.offer(*cur_score, cur);
        if (used >= q.budget) break;
      }
    }
    if (used >= q.budget) est.budget_exhausted = true;
    est.evaluations += used;
  }
  return best;
}

}  // namespace

std::optional<Rat> evaluate_candidate(const TauberianQuery& q, const GridWeight* w, const GridSet& e) {
  check_query(q, w);
  require(e.dim == q.dim && e.resolution == q.resolution, Errc::invalid_argument, "candidate grid mismatch");
  if (q.engine == Engine::exact_1d) return ExactEval(q, w)(e);
  GridEval eval(q, w);
  auto s = eval(e);
  if (!s) return std::nullopt;
  return to_rat(*s);
}

TauberianEstimate estimate_tauberian(const TauberianQuery& q, const GridWeight* w,
                                     const std::vector<GridSet>& warm_starts) {
  check_query(q, w);
  TauberianEstimate est;
  auto finish = [&](auto& best) {
    // E = full grid always has ratio >= 1, so the estimate never drops below 1.
    GridSet full = GridSet::full(q.dim, q.resolution);
    if (auto s = evaluate_candidate(q, w, full); s && (!best.score || to_rat(*best.score) < *s)) {
      est.value = *s;
      est.grid_witness = full;
    } else if (best.score) {
      est.value = to_rat(*best.score);
      est.grid_witness = best.set;
    }
    if (q.engine == Engine::exact_1d && est.grid_witness) est.interval_witness = cells_to_intervals(*est.grid_witness);
  };
  if (q.engine == Engine::exact_1d) {
    ExactEval eval(q, w);
    auto best = run_search(q, eval, warm_starts, est);
    finish(best);
  } else {
    GridEval eval(q, w);
    auto best = run_search(q, eval, warm_starts, est);
    finish(best);
  }
  if (q.setting == Setting::lebesgue && q.dim == 1) est.upper_reference = (2 - q.alpha) / q.alpha;
  return est;
}

TauberianCurve tauberian_curve(const TauberianQuery& tmpl, const std::vector<Rat>& alphas, const GridWeight* w) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    require(alphas[i] > 0 && alphas[i] < 1, Errc::invalid_argument, "alphas must lie in (0,1)");
    if (i > 0) require(alphas[i] > alphas[i - 1], Errc::invalid_argument, "alphas must be ascending");
  }
  TauberianCurve curve;
  curve.query = tmpl;
  std::vector<GridSet> warm;
  for (const auto& a : alphas) {
    TauberianQuery q = tmpl;
    q.alpha = a;
    auto est = estimate_tauberian(q, w, warm);
    warm.clear();
    if (est.grid_witness) warm.push_back(*est.grid_witness);
    curve.points.push_back({a, std::move(est)});
  }
  return curve;
}

ExactTauberian1D exact_tauberian_1d(const Rat& alpha) {
  require(alpha > 0 && alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  ExactTauberian1D r;
  r.value = (2 - alpha) / alpha;
  r.witness = IntervalSet({{Rat(0), Rat(1)}});
  r.halo = exact_halo_1d(r.witness, alpha, nullptr);
  r.attained = r.halo.measure() / r.witness.measure();
  return r;
}

AtomicMeasure counterexample_measure(long j_max) {
  require(j_max >= 2, Errc::invalid_argument, "J must be at least 2");
  std::vector<Atom> atoms;
  atoms.push_back({{Rat(0), Rat(0)}, Rat(1)});
  for (long j = 2; j <= j_max; ++j) atoms.push_back({{make_rat(1, j), Rat(1 - make_rat(1, j))}, make_rat(1, j)});
  return AtomicMeasure(std::move(atoms));
}

CounterexampleResult counterexample_demo(long j_max, const Rat& alpha, int doublings) {
  require(alpha > 0 && alpha < 1, Errc::invalid_argument, "alpha must lie in (0,1)");
  require(doublings >= 0 && doublings <= 6, Errc::invalid_argument, "doublings must lie in 0..6");
  CounterexampleResult out;
  long j = j_max;
  for (int d = 0; d <= doublings; ++d, j *= 2) {
    auto mu = counterexample_measure(j);
    auto halo = atomic_maximal_lower(mu, {0}, alpha);
    out.growth_table.push_back({j, halo.halo_mass_lower});
  }
  out.lower_bound = out.growth_table.front().bound;
  out.halo_beyond_e_empty = out.lower_bound == 1;
  return out;
}

}  // namespace tlab
