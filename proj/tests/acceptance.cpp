// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "tauberian/analysis.hpp"
#include "tauberian/covering.hpp"
#include "tauberian/parallel.hpp"
#include "tauberian/pipelines.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs < limit_s;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %-34s %7.2fs (limit %gs) %s%s\n", ok ? "PASS" : "FAIL", id, title, secs, limit_s,
              o.detail.c_str(), in_time ? "" : " [too slow]");
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct FamilyCase {
  BoxFamily family;
  Rat delta;
};

std::vector<FamilyCase> families(std::uint64_t seed) {
  static const Rat deltas[] = {Rat(1, 8), Rat(1, 4), Rat(1, 2)};
  std::vector<FamilyCase> out;
  for (int t = 0; t < 500; ++t) {
    std::mt19937_64 rng(split_seed(seed, "families", t));
    int dim = 1 + t % 3;
    std::size_t count = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    out.push_back({random_decreasing_family(rng, dim, count), deltas[t % 3]});
  }
  return out;
}

GridWeight power(double a, int n) {
  WeightFamilySpec s;
  s.family = WeightFamily::power;
  s.exponent = a;
  s.resolution = n;
  return generate_weight(s);
}

}  // namespace

int main() {
  criterion(1, "exact 1-D Tauberian value", 1, [] {
    Outcome o;
    for (Rat a : {Rat(1, 2), Rat(2, 3), Rat(3, 4), Rat(9, 10)}) {
      auto r = exact_tauberian_1d(a);
      Rat want = (2 - a) / a;
      if (r.value != want || r.attained != want) o.pass = false;
      o.detail += to_string(a) + "->" + to_string(r.attained) + " ";
    }
    return o;
  });

  const auto cases = families(2024);

  criterion(2, "dilation identity, 500 families", 30, [&] {
    Outcome o;
    std::size_t bad = 0;
    for (const auto& c : cases) bad += check_dilation_identity(c.family, c.delta).defect != 0;
    BoxFamily control({Box::from_corner({Rat(0)}, Rat(1)), Box::from_corner({Rat(0)}, Rat(4))}, Ordering::unordered);
    Rat control_defect = check_dilation_identity(control, Rat(1, 2)).defect;
    o.pass = bad == 0 && control_defect > 0;
    o.detail = "nonzero defects " + std::to_string(bad) + "/500, control defect " + to_string(control_defect);
    return o;
  });

  criterion(3, "dilated union bound, 500 families", 30, [&] {
    std::size_t bad = 0;
    for (const auto& c : cases) {
      std::vector<Box> big;
      for (const auto& b : c.family.boxes) big.push_back(dilate(b, 1 + c.delta));
      if (union_measure(big) > pow(1 + c.delta, unsigned(c.family.dim())) * union_measure(c.family)) ++bad;
    }
    return Outcome{bad == 0, "violations " + std::to_string(bad) + "/500"};
  });

  criterion(4, "selection contracts", 120, [] {
    std::size_t bad[5] = {0, 0, 0, 0, 0};
    for (int t = 0; t < 500; ++t) {
      std::mt19937_64 rng(split_seed(99, "selection", t));
      auto f = random_decreasing_family(rng, 1 + t % 3, 1 + t % 10);
      bad[0] += !verify_selection_contract(vitali_select(f)).all_pass();
      Rat d = make_rat(1 + t % 7, 8);
      bad[1] += !verify_selection_contract(cf_select_lebesgue(f, d), d).all_pass();
      int dim = 1 + t % 2, n = dim == 1 ? 16 : 8;
      GridWeight w = random_weight(rng, dim, n);
      auto g = random_grid_family(rng, dim, n, 1 + t % 10);
      bad[2] += !verify_selection_contract(cf_select_weighted(g, w, d), d, &w).all_pass();
      auto iv = random_intervals(rng, 1 + t % 12);
      bad[3] += !verify_overlap2(iv, overlap2_select_1d(iv)).all_pass();
      if (t < 200) {
        WeightFamilySpec s;
        s.dim = dim;
        s.resolution = n;
        GridWeight flat = generate_weight(s);
        bad[4] += cf_select_weighted(g, flat, d).selected != cf_select_lebesgue(g, d).selected;
      }
    }
    std::ostringstream s;
    s << "failures vitali " << bad[0] << "/500, cf-lebesgue " << bad[1] << "/500, cf-weighted " << bad[2]
      << "/500, overlap2 " << bad[3] << "/500, constant-vs-lebesgue " << bad[4] << "/200";
    return Outcome{bad[0] + bad[1] + bad[2] + bad[3] + bad[4] == 0, s.str()};
  });

  criterion(5, "Solyanik exponent, Lebesgue 1-D", 5, [] {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 10; ++i) {
      Rat a = make_rat(90 + i, 100);
      pts.emplace_back(to_double(a), to_double(exact_tauberian_1d(a).value));
    }
    auto fit = fit_solyanik(pts);
    return Outcome{fit.c >= 1.0 && fit.c <= 1.1, "c = " + fmt("%.6f", fit.c) + ", K = " + fmt("%.6f", fit.K)};
  });

  criterion(6, "weighted Solyanik trend", 600, [] {
    const double as[] = {0, 1, 2, 4};
    double c[4], fw[4];
    std::ostringstream s;
    for (int i = 0; i < 4; ++i) {
      GridWeight w = power(as[i], 256);
      fw[i] = fujii_wilson(w);
      auto curve = ambient_curve(w, default_report_alphas(), 7);
      c[i] = fit_solyanik(curve).c;
      s << "a=" << as[i] << ": c=" << fmt("%.4f", c[i]) << " fw=" << fmt("%.4f", fw[i]) << "; ";
    }
    bool decreasing = c[0] > c[1] && c[1] > c[2] && c[2] > c[3];
    double lo = INFINITY, hi = 0;
    for (int i = 0; i < 4; ++i) {
      lo = std::min(lo, c[i] * fw[i]);
      hi = std::max(hi, c[i] * fw[i]);
    }
    s << "strictly decreasing " << (decreasing ? "yes" : "no") << ", c*fw ratio " << fmt("%.3f", hi / lo);
    return Outcome{decreasing && hi / lo <= 4, s.str()};
  });

  criterion(7, "growth exponent bridge", 300, [] {
    std::vector<GridWeight> corpus;
    for (double a : {0.0, 1.0, 2.0, 4.0}) corpus.push_back(power(a, 256));
    WeightFamilySpec cb;
    cb.family = WeightFamily::checkerboard;
    cb.resolution = 256;
    cb.levels = 3;
    corpus.push_back(generate_weight(cb));
    WeightFamilySpec lr;
    lr.family = WeightFamily::log_smooth_random;
    lr.resolution = 256;
    lr.seed = 7;
    corpus.push_back(generate_weight(lr));
    WeightFamilySpec p2;
    p2.family = WeightFamily::power;
    p2.dim = 2;
    p2.resolution = 32;
    p2.exponent = 1;
    corpus.push_back(generate_weight(p2));
    double lo = INFINITY, hi = 0;
    bool bound_ok = true;
    std::ostringstream s;
    for (const auto& w : corpus) {
      auto fit = fit_growth_exponent(growth_profile(w, default_growth_ts()));
      double fw = fujii_wilson(w);
      double v = fw / fit.c2;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (fit.c2 * (1 + std::log(fit.c1)) < fw / 8) bound_ok = false;
    }
    s << "(1/c2)*fw ratio " << fmt("%.3f", hi / lo) << ", implied bound >= fw/8 " << (bound_ok ? "yes" : "no");
    return Outcome{hi / lo <= 8 && bound_ok, s.str()};
  });

  criterion(8, "trivial-weight exactness", 60, [] {
    Outcome o;
    for (int dim = 1; dim <= 2; ++dim) {
      WeightFamilySpec s;
      s.dim = dim;
      s.resolution = dim == 1 ? 64 : 16;
      GridWeight w = generate_weight(s);
      auto near = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::abs(y); };
      double ap = ap_constant(w, 2), fw = fujii_wilson(w), h = hruscev_constant(w), d = doubling_constant(w),
             g = sidelength_growth_exponent(w);
      if (!near(ap, 1) || !near(fw, 1) || !near(h, 1) || !near(d, std::ldexp(1.0, dim)) || !near(g, dim)) o.pass = false;
      o.detail += "n=" + std::to_string(dim) + ": ap " + fmt("%.15g", ap) + " fw " + fmt("%.15g", fw) + " h " +
                  fmt("%.15g", h) + " dbl " + fmt("%.15g", d) + " gamma " + fmt("%.15g", g) + "; ";
    }
    return o;
  });

  criterion(9, "counterexample divergence", 5, [] {
    auto r = counterexample_demo(1000, Rat(9, 10), 2);
    double b0 = to_double(r.growth_table[0].bound);
    bool ok = b0 >= 5.5;
    std::string d = "J=1000: " + fmt("%.4f", b0);
    for (std::size_t i = 1; i < r.growth_table.size(); ++i) {
      double step = to_double(r.growth_table[i].bound - r.growth_table[i - 1].bound);
      if (std::abs(step - 0.69) > 0.01) ok = false;
      d += ", +" + fmt("%.4f", step);
    }
    return Outcome{ok, d};
  });

  criterion(10, "embedding formula", 60, [] {
    auto e = embedding_exponent(2, 0.9, 0.5, 1);
    double want = 49 * std::log(2.0);
    bool ok = e.ceil_level == 6 && e.ceil_steps == 8 && std::abs(e.exponent - want) <= 1e-12 * want;
    WeightFamilySpec s;
    s.resolution = 64;
    auto rw = restricted_weak_type_check(generate_weight(s), 2, 2000, 7);
    ok = ok && rw.worst_constant <= 2;
    return Outcome{ok, "ceilings (" + std::to_string(e.ceil_level) + ", " + std::to_string(e.ceil_steps) +
                           "), exponent " + fmt("%.12f", e.exponent) + ", weak-type constant " +
                           fmt("%.4f", rw.worst_constant)};
  });

  criterion(11, "proof-pipeline replays", 600, [] {
    auto r = verify_lemmas("pipelines", 500, 11);
    std::string d;
    bool ok = true;
    for (const auto& c : r.checks) {
      d += c.name + " " + std::to_string(c.trials - c.failures) + "/" + std::to_string(c.trials) + " ";
      ok = ok && c.pass() && c.trials == 500;
    }
    return Outcome{ok, d};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
