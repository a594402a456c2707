#include "tauberian/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/numeric.hpp"
#include "tauberian/parallel.hpp"

namespace tlab {

SolyanikFit fit_solyanik(const std::vector<std::pair<double, double>>& points) {
  SolyanikFit fit;
  std::vector<double> xs, ys;
  for (const auto& [alpha, value] : points) {
    if (!(value > 1 + 1e-9) || !(alpha < 1)) {
      fit.excluded_alphas.push_back(alpha);
      continue;
    }
    xs.push_back(std::log(1 - alpha));
    ys.push_back(std::log(value - 1));
    if (fit.points_used == 0 || alpha < fit.alpha_min) fit.alpha_min = alpha;
    if (fit.points_used == 0 || alpha > fit.alpha_max) fit.alpha_max = alpha;
    ++fit.points_used;
  }
  if (xs.size() < 3) fail(Errc::fit_degenerate, "fewer than 3 points with value above 1");
  LinearFit lf = least_squares(xs, ys);
  fit.K = std::exp(lf.intercept);
  fit.c = lf.slope;
  fit.residual = lf.rms;
  return fit;
}

SolyanikFit fit_solyanik(const TauberianCurve& curve) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : curve.points) pts.emplace_back(to_double(p.alpha), to_double(p.estimate.value));
  return fit_solyanik(pts);
}

double converse_ainfty_bound(double B, double beta) {
  require(B >= 1 && beta >= 1, Errc::invalid_argument, "B and beta must be at least 1");
  return beta * (1 + std::log(B));
}

namespace {

// Smallest integer >= x, forgiving rounding noise just above an integer.
long ceil_tol(double x) {
  double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) return static_cast<long>(r);
  return static_cast<long>(std::ceil(x));
}

Rat decimal_rat(double a) { return make_rat(std::llround(a * 1e6), 1000000); }

}  // namespace

EmbeddingResult embedding_exponent(double cw, double alpha0, double lambda, int dim, double ainfty,
                                   DimensionalConstants consts) {
  require(cw >= 1, Errc::invalid_argument, "C^w(alpha0) must be at least 1");
  require(alpha0 > 0 && alpha0 < 1, Errc::invalid_argument, "alpha0 must lie in (0,1)");
  require(dim >= 1, Errc::invalid_argument, "dimension must be positive");
  require(std::ldexp(alpha0, dim) > 1, Errc::invalid_argument, "need 2^n alpha0 > 1");
  require(lambda > 0 && lambda < alpha0, Errc::invalid_argument, "lambda must lie in (0, alpha0)");
  require(consts.c_n > 0, Errc::invalid_argument, "c_n must be positive");
  require(ainfty >= 1, Errc::invalid_argument, "A_infinity value must be at least 1");
  EmbeddingResult r;
  r.alpha0 = alpha0;
  r.cw_alpha0 = cw;
  r.lambda = lambda;
  r.dim = dim;
  r.ceil_level = std::max(1L, ceil_tol(-std::log(alpha0 / lambda) / std::log(alpha0)));
  double logplus = std::max(0.0, std::log(std::ldexp(alpha0, dim)));
  r.ceil_steps = ceil_tol(2 + logplus / std::log(1 / alpha0));
  const double logc = std::log(cw);
  r.exponent = logc * double(r.ceil_level * r.ceil_steps + 1);
  r.bound_factor = std::exp(r.exponent);
  r.ainfty = ainfty;
  r.c_n_used = consts.c_n;
  const double grow = std::exp(consts.c_n * ainfty);
  r.p0 = grow * logc;
  r.q = 2 * grow;
  r.ap_bound = std::pow(16 * cw, grow);
  return r;
}

RestrictedWeakType restricted_weak_type_check(const GridWeight& w, double p, std::size_t trials, std::uint64_t seed) {
  require(p > 1, Errc::invalid_argument, "p must exceed 1");
  const int dim = w.dim(), n = w.resolution();
  GridWeight leb = GridWeight::lebesgue(dim, n);
  RestrictedWeakType out;
  out.trials = trials;
  out.worst_witness = GridSet(dim, n);
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(split_seed(seed, "restricted-weak-type", t));
    GridSet e(dim, n);
    const int pieces = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < pieces; ++k) {
      int s = std::uniform_int_distribution<int>(1, std::max(1, n / 4))(rng);
      int x = std::uniform_int_distribution<int>(0, n - s)(rng);
      int y = dim == 1 ? 0 : std::uniform_int_distribution<int>(0, n - s)(rng);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < (dim == 1 ? 1 : s); ++j) e.cells[dim == 1 ? std::size_t(x + i) : std::size_t(x + i) * n + y + j] = 1;
    }
    Rat lambda = make_rat(std::uniform_int_distribution<long>(1, 999)(rng), 1000);
    __int128 me = set_units(w, e);
    if (me == 0) continue;
    GridSet k = superlevel(MaximalVariant::uncentered, leb, e, lambda);
    double ratio = to_double(rat_from_int128(set_units(w, k), me));
    double value = std::pow(to_double(lambda), p) * ratio;
    if (value > out.worst_constant) {
      out.worst_constant = value;
      out.worst_lambda = lambda;
      out.worst_witness = e;
    }
  }
  return out;
}

std::vector<double> default_report_alphas() {
  std::vector<double> a;
  for (int i = 0; i < 10; ++i) a.push_back(0.9 + 0.01 * i);
  return a;
}

TauberianCurve ambient_curve(const GridWeight& w, const std::vector<double>& alphas, std::uint64_t seed,
                             std::size_t budget) {
  TauberianQuery q;
  q.setting = Setting::weighted_ambient;
  q.engine = Engine::grid;
  q.dim = w.dim();
  q.resolution = w.resolution();
  q.strategy = Strategy::structured_local_search;
  q.seed = seed;
  q.budget = budget;
  std::vector<Rat> as;
  for (double a : alphas) as.push_back(decimal_rat(a));
  return tauberian_curve(q, as, &w);
}

ConsistencyReport consistency_report(const std::vector<GridWeight>& corpus, const std::vector<std::string>& ids,
                                     const ReportOptions& opts) {
  require(!corpus.empty(), Errc::invalid_argument, "corpus is empty");
  require(ids.size() == corpus.size(), Errc::invalid_argument, "one id per weight");
  ConsistencyReport rep;
  rep.alphas = opts.alphas.empty() ? default_report_alphas() : opts.alphas;
  rep.seed = opts.seed;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const GridWeight& w = corpus[i];
    for (auto u : w.units())
      require(u > 0, Errc::degenerate_weight, "report weights must be positive on every cell");
    ReportRow row;
    row.weight_id = ids[i];
    row.c_n_used = opts.consts.c_n;
    row.fujii_wilson = fujii_wilson(w);
    row.hruscev = hruscev_constant(w);
    row.doubling = w.resolution() >= 4 ? doubling_constant(w) : std::nan("");
    row.rh_epsilon = reverse_holder_exponent(w).epsilon;
    row.gamma = w.resolution() >= 8 ? sidelength_growth_exponent(w) : std::nan("");
    auto curve = ambient_curve(w, rep.alphas, split_seed(opts.seed, "report-row", i), opts.budget);
    try {
      auto fit = fit_solyanik(curve);
      row.fit_ok = true;
      row.solyanik_c = fit.c;
      row.solyanik_K = fit.K;
      // The converse bound takes B = K and beta = 1/c, both floored at 1.
      row.converse_bound = converse_ainfty_bound(std::max(1.0, fit.K), std::max(1.0, 1 / fit.c));
    } catch (const Error& e) {
      if (e.code() != Errc::fit_degenerate) throw;
      row.note = "fit-degenerate";
      row.solyanik_c = row.solyanik_K = row.converse_bound = std::nan("");
    }
    const double a0 = rep.alphas.front();
    const double cw = to_double(curve.points.front().estimate.value);
    if (std::ldexp(a0, w.dim()) > 1)
      row.p0 = embedding_exponent(cw, a0, a0 / 2, w.dim(), std::max(1.0, row.fujii_wilson), opts.consts).p0;
    else
      row.p0 = std::nan("");
    rep.k1 = std::max(rep.k1, row.fujii_wilson / row.hruscev);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace tlab
