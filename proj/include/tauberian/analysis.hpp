#pragma once

// Exponent fits and the quantitative bridges between Tauberian constants and
// A_infinity constants.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tauberian/tauberian.hpp"
#include "tauberian/weights.hpp"

namespace tlab {

// Model: value - 1 = K (1 - alpha)^c.
struct SolyanikFit {
  double K = 0;
  double c = 0;
  double residual = 0;  // rms of the log-log fit
  double alpha_min = 0, alpha_max = 0;
  std::size_t points_used = 0;
  std::vector<double> excluded_alphas;  // points with value <= 1 + 1e-9
};

// Points are (alpha, value). Throws fit-degenerate with fewer than 3 usable points.
SolyanikFit fit_solyanik(const std::vector<std::pair<double, double>>& points);
SolyanikFit fit_solyanik(const TauberianCurve& curve);

// beta (1 + log B); both arguments must be >= 1.
double converse_ainfty_bound(double B, double beta);

// Dimensional constant of the embedding argument. It is not pinned down by
// the theory, so every output records the value used.
struct DimensionalConstants {
  double c_n = 1;
};

struct EmbeddingResult {
  double alpha0 = 0, cw_alpha0 = 0, lambda = 0;
  int dim = 1;
  long ceil_level = 0;    // ceil(-log(alpha0/lambda) / log alpha0)
  long ceil_steps = 0;    // ceil(2 + log+(2^n alpha0) / log(1/alpha0))
  double exponent = 0;    // log C (ceil_level * ceil_steps + 1)
  double bound_factor = 0;  // exp(exponent)
  double ainfty = 0;
  double p0 = 0;          // e^{c_n a} log C
  double q = 0;           // 2 e^{c_n a}
  double ap_bound = 0;    // (16 C)^{e^{c_n a}}
  double c_n_used = 1;
};

// ainfty is the A_infinity value a used for p0, q and the A_p bound.
EmbeddingResult embedding_exponent(double cw_alpha0, double alpha0, double lambda, int dim, double ainfty = 1,
                                   DimensionalConstants consts = {});

struct RestrictedWeakType {
  double worst_constant = 0;
  Rat worst_lambda;
  GridSet worst_witness;
  std::size_t trials = 0;
};

// sup over random (E, lambda) of lambda^p w({M chi_E > lambda}) / w(E), with the
// Lebesgue maximal operator. Deterministic given the seed.
RestrictedWeakType restricted_weak_type_check(const GridWeight& w, double p, std::size_t trials, std::uint64_t seed);

struct ReportRow {
  std::string weight_id;
  double fujii_wilson = 0, hruscev = 0, doubling = 0, rh_epsilon = 0, gamma = 0;
  bool fit_ok = false;
  double solyanik_c = 0, solyanik_K = 0;
  double converse_bound = 0;
  double p0 = 0;
  double c_n_used = 1;
  std::string note;
};

struct ConsistencyReport {
  std::vector<ReportRow> rows;
  double k1 = 0;  // max fujii_wilson / hruscev over the corpus
  std::vector<double> alphas;
  std::uint64_t seed = 0;
};

struct ReportOptions {
  std::vector<double> alphas;  // empty: 0.9:0.99 in 10 steps
  std::uint64_t seed = 7;
  std::size_t budget = 50000;
  DimensionalConstants consts;
};

ConsistencyReport consistency_report(const std::vector<GridWeight>& corpus, const std::vector<std::string>& ids,
                                     const ReportOptions& opts);

// Weighted-ambient curve with structured + local search, as used by the report.
TauberianCurve ambient_curve(const GridWeight& w, const std::vector<double>& alphas, std::uint64_t seed,
                             std::size_t budget = 50000);

std::vector<double> default_report_alphas();

}  // namespace tlab
