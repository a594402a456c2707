#pragma once

// Empirical sharp Tauberian constants: mass of {M chi_E > alpha} over mass of
// E, maximized over candidate sets E. Every estimate is a lower bound for the
// continuous constant and carries the witness set that produced it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tauberian/atomic.hpp"
#include "tauberian/exact1d.hpp"
#include "tauberian/maximal.hpp"

namespace tlab {

// lebesgue:           M over Lebesgue measure, Lebesgue mass.
// weighted-operator:  M_w (averages taken with w), w-mass.
// weighted-ambient:   Lebesgue M, w-mass.
enum class Setting { lebesgue, weighted_operator, weighted_ambient };
enum class Engine { grid, exact_1d };
enum class Strategy { exhaustive, structured, local_search, structured_local_search };

const char* setting_name(Setting s);
const char* engine_name(Engine e);
const char* strategy_name(Strategy s);
Setting parse_setting(const std::string& s);
Engine parse_engine(const std::string& s);
Strategy parse_strategy(const std::string& s);

inline constexpr std::size_t kExhaustiveMaxCells = 24;

struct TauberianQuery {
  Setting setting = Setting::lebesgue;
  Rat alpha = Rat(1, 2);
  Engine engine = Engine::grid;
  int dim = 1;
  int resolution = 16;  // candidate sets are unions of cells of this grid
  Strategy strategy = Strategy::structured;
  std::optional<std::uint64_t> seed;  // required by the local-search strategies
  std::size_t budget = 50000;         // evaluation cap (structured and local search)
  int restarts = 20;
};

struct TauberianEstimate {
  Rat value;  // exact mass ratio of the witness
  std::optional<GridSet> grid_witness;
  std::optional<IntervalSet> interval_witness;  // exact-1d engine
  std::optional<Rat> upper_reference;            // (2 - alpha)/alpha, Lebesgue 1-D only
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
  std::size_t witness_size() const;
};

// Mass ratio of one candidate set; nullopt when E has zero mass.
std::optional<Rat> evaluate_candidate(const TauberianQuery& q, const GridWeight* w, const GridSet& e);

// warm_starts seed the local search in addition to its random restarts.
TauberianEstimate estimate_tauberian(const TauberianQuery& q, const GridWeight* w = nullptr,
                                     const std::vector<GridSet>& warm_starts = {});

struct CurvePoint {
  Rat alpha;
  TauberianEstimate estimate;
};

struct TauberianCurve {
  TauberianQuery query;  // template; alpha varies per point
  std::vector<CurvePoint> points;
};

TauberianCurve tauberian_curve(const TauberianQuery& tmpl, const std::vector<Rat>& alphas, const GridWeight* w = nullptr);

struct ExactTauberian1D {
  Rat value;  // (2 - alpha)/alpha
  IntervalSet witness;
  IntervalSet halo;
  Rat attained;  // |halo| / |witness|
};
ExactTauberian1D exact_tauberian_1d(const Rat& alpha);

struct GrowthRow {
  long j_max = 0;
  Rat bound;
};

struct CounterexampleResult {
  Rat lower_bound;
  bool halo_beyond_e_empty = false;
  std::vector<GrowthRow> growth_table;  // J, 2J, 4J, ...
};

// mu = delta_0 + sum_{j=2}^{J} (1/j) delta_{x_j}, x_j = (1/j, 1 - 1/j), E = {0}.
AtomicMeasure counterexample_measure(long j_max);
CounterexampleResult counterexample_demo(long j_max, const Rat& alpha, int doublings = 2);

}  // namespace tlab
