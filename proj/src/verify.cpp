#include "tauberian/verify.hpp"

#include <algorithm>
#include <functional>

#include "tauberian/errors.hpp"
#include "tauberian/parallel.hpp"

namespace tlab {

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

namespace {

Rat random_rat(std::mt19937_64& rng, long lo_units, long hi_units, long den) {
  return make_rat(std::uniform_int_distribution<long>(lo_units, hi_units)(rng), den);
}

long random_den(std::mt19937_64& rng) {
  static const long dens[] = {1, 2, 3, 4, 8};
  return dens[std::uniform_int_distribution<int>(0, 4)(rng)];
}

}  // namespace

std::vector<Box> random_boxes(std::mt19937_64& rng, int dim, std::size_t count) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < count; ++i) {
    long d = random_den(rng);
    std::vector<Rat> c;
    for (int a = 0; a < dim; ++a) c.push_back(random_rat(rng, -4 * d, 4 * d, d));
    out.emplace_back(std::move(c), random_rat(rng, 1, 4 * d, d));
  }
  return out;
}

BoxFamily random_decreasing_family(std::mt19937_64& rng, int dim, std::size_t count) {
  return BoxFamily::sorted_decreasing(random_boxes(rng, dim, count));
}

BoxFamily random_grid_family(std::mt19937_64& rng, int dim, int n, std::size_t count) {
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < count; ++i) {
    int s = std::uniform_int_distribution<int>(1, std::max(1, n / 2))(rng);
    GridCube q{{std::uniform_int_distribution<int>(0, n - s)(rng),
                dim == 1 ? 0 : std::uniform_int_distribution<int>(0, n - s)(rng)},
               s};
    boxes.push_back(to_box(q, dim, n));
  }
  return BoxFamily::sorted_decreasing(std::move(boxes));
}

GridWeight random_weight(std::mt19937_64& rng, int dim, int n) {
  WeightFamilySpec s;
  s.dim = dim;
  s.resolution = n;
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      s.family = WeightFamily::constant;
      break;
    case 1: {
      static const double exps[] = {0.5, 1, 2, 3};
      s.family = WeightFamily::power;
      s.exponent = exps[std::uniform_int_distribution<int>(0, 3)(rng)];
      s.center = {std::uniform_real_distribution<double>(0, 1)(rng), std::uniform_real_distribution<double>(0, 1)(rng)};
      break;
    }
    case 2:
      s.family = WeightFamily::checkerboard;
      s.levels = std::uniform_int_distribution<int>(1, 2)(rng);
      s.contrast = std::uniform_int_distribution<int>(2, 8)(rng);
      break;
    default:
      s.family = WeightFamily::log_smooth_random;
      s.seed = rng();
      s.smoothness = std::uniform_int_distribution<int>(1, 2)(rng);
      break;
  }
  return generate_weight(s);
}

GridSet random_grid_set(std::mt19937_64& rng, int dim, int n) {
  GridSet e(dim, n);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    double p = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    std::bernoulli_distribution coin(p);
    for (auto& c : e.cells) c = coin(rng);
  } else {
    int pieces = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < pieces; ++k) {
      int s = std::uniform_int_distribution<int>(1, std::max(1, n / 4))(rng);
      int x = std::uniform_int_distribution<int>(0, n - s)(rng);
      int y = dim == 1 ? 0 : std::uniform_int_distribution<int>(0, n - s)(rng);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < (dim == 1 ? 1 : s); ++j) e.cells[dim == 1 ? std::size_t(x + i) : std::size_t(x + i) * n + y + j] = 1;
    }
  }
  if (e.count() == 0) e.cells[std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng)] = 1;
  return e;
}

std::vector<Interval> random_intervals(std::mt19937_64& rng, std::size_t count) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < count; ++i) {
    long d = random_den(rng);
    Rat lo = random_rat(rng, 0, 16 * d, d);
    out.push_back({lo, lo + random_rat(rng, 1, 4 * d, d)});
  }
  return out;
}

BoxFamily ordering_violation_control() {
  std::vector<Box> boxes{Box({Rat(1)}, Rat(1)), Box({Rat(0)}, Rat(4))};
  return BoxFamily(std::move(boxes), Ordering::unordered);
}

Rat union_measure_oracle(std::span<const Box> boxes) {
  const std::size_t dim = boxes.empty() ? 0 : boxes.front().dim();
  Rat total = 0;
  std::vector<Rat> lo(dim), hi(dim);
  std::function<void(std::size_t, int)> walk = [&](std::size_t start, int depth) {
    for (std::size_t i = start; i < boxes.size(); ++i) {
      std::vector<Rat> slo = lo, shi = hi;
      bool empty = false;
      Rat vol = 1;
      for (std::size_t a = 0; a < dim; ++a) {
        if (depth == 0) {
          lo[a] = boxes[i].lo(a);
          hi[a] = boxes[i].hi(a);
        } else {
          lo[a] = std::max(lo[a], boxes[i].lo(a));
          hi[a] = std::min(hi[a], boxes[i].hi(a));
        }
        if (hi[a] <= lo[a]) empty = true;
        else vol *= hi[a] - lo[a];
      }
      if (!empty) {
        if (depth % 2 == 0) total += vol;
        else total -= vol;
        walk(i + 1, depth + 1);
      }
      lo = std::move(slo);
      hi = std::move(shi);
    }
  };
  walk(0, 0);
  return total;
}

namespace {

// Halves a failing family while some half still fails.
BoxFamily shrink(BoxFamily f, const std::function<bool(const BoxFamily&)>& fails) {
  while (f.size() > 1) {
    std::size_t h = f.size() / 2;
    BoxFamily a(std::vector<Box>(f.boxes.begin(), f.boxes.begin() + h), f.ordering);
    BoxFamily b(std::vector<Box>(f.boxes.begin() + h, f.boxes.end()), f.ordering);
    if (fails(a)) f = std::move(a);
    else if (fails(b)) f = std::move(b);
    else break;
  }
  return f;
}

class Runner {
 public:
  Runner(std::string suite, std::size_t trials, std::uint64_t seed, VerifyReport& rep)
      : suite_(std::move(suite)), trials_(trials), seed_(seed), rep_(rep) {}

  // check(rng) returns nullopt on success, or a reproducer document.
  void run(const std::string& name, const std::function<std::optional<Json>(std::mt19937_64&)>& check,
           std::size_t trials) {
    CheckResult r;
    r.suite = suite_;
    r.name = name;
    r.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      std::mt19937_64 rng(split_seed(seed_, suite_ + "/" + name, t));
      std::optional<Json> bad;
      try {
        bad = check(rng);
      } catch (const Error& e) {
        bad = Json{{"error", errc_name(e.code())}, {"message", e.detail()}};
      }
      if (bad) {
        if (r.failures == 0) {
          r.reproducer = *bad;
          r.reproducer["trial"] = t;
        }
        ++r.failures;
      }
    }
    rep_.checks.push_back(std::move(r));
  }
  void run(const std::string& name, const std::function<std::optional<Json>(std::mt19937_64&)>& check) {
    run(name, check, trials_);
  }
  // Deterministic single-shot check.
  void once(const std::string& name, const std::function<std::optional<Json>()>& check) {
    run(name, [&](std::mt19937_64&) { return check(); }, trials_ == 0 ? 0 : 1);
  }

 private:
  std::string suite_;
  std::size_t trials_;
  std::uint64_t seed_;
  VerifyReport& rep_;
};

const Rat kDeltas[] = {Rat(1, 8), Rat(1, 4), Rat(1, 2)};

Rat pick_delta(std::mt19937_64& rng) { return kDeltas[std::uniform_int_distribution<int>(0, 2)(rng)]; }

BoxFamily pick_family(std::mt19937_64& rng) {
  int dim = std::uniform_int_distribution<int>(1, 3)(rng);
  std::size_t count = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
  return random_decreasing_family(rng, dim, count);
}

Json family_case(const BoxFamily& f, const Rat& delta) {
  Json j = to_json(f);
  j["delta"] = to_string(delta);
  return j;
}

void geometry_suite(Runner& run) {
  run.run("identity-defect-zero", [](std::mt19937_64& rng) -> std::optional<Json> {
    BoxFamily f = pick_family(rng);
    Rat d = pick_delta(rng);
    auto fails = [&](const BoxFamily& g) { return check_dilation_identity(g, d).defect != 0; };
    if (!fails(f)) return std::nullopt;
    return family_case(shrink(f, fails), d);
  });
  run.once("identity-ordering-control", []() -> std::optional<Json> {
    BoxFamily f = ordering_violation_control();
    if (check_dilation_identity(f, Rat(1, 2)).defect > 0) return std::nullopt;
    return family_case(f, Rat(1, 2));
  });
  run.run("dilate-union-bound", [](std::mt19937_64& rng) -> std::optional<Json> {
    BoxFamily f = pick_family(rng);
    Rat d = pick_delta(rng);
    auto fails = [&](const BoxFamily& g) {
      std::vector<Box> big;
      for (const auto& b : g.boxes) big.push_back(dilate(b, 1 + d));
      return union_measure(big) > pow(1 + d, unsigned(g.dim())) * union_measure(g);
    };
    if (!fails(f)) return std::nullopt;
    return family_case(shrink(f, fails), d);
  });
  run.run("increments-partition-union", [](std::mt19937_64& rng) -> std::optional<Json> {
    BoxFamily f = pick_family(rng);
    auto fails = [](const BoxFamily& g) {
      auto inc = increments(g);
      Rat sum = 0;
      for (const auto& r : inc) sum += r.measure();
      for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = i + 1; j < inc.size(); ++j)
          if (intersection_measure(inc[i], inc[j]) != 0) return true;
      return sum != union_measure(g);
    };
    if (!fails(f)) return std::nullopt;
    return family_case(shrink(f, fails), Rat(0));
  });
  run.run("union-oracle", [](std::mt19937_64& rng) -> std::optional<Json> {
    BoxFamily f = pick_family(rng);
    auto fails = [](const BoxFamily& g) { return union_measure(g) != union_measure_oracle(g.boxes); };
    if (!fails(f)) return std::nullopt;
    return family_case(shrink(f, fails), Rat(0));
  });
}

std::optional<Json> contract_failure(const SelectionResult& r, const ContractReport& c) {
  if (c.all_pass()) return std::nullopt;
  Json j = to_json(r);
  j["contract"] = to_json(c);
  return j;
}

void covering_suite(Runner& run) {
  run.run("vitali-contract", [](std::mt19937_64& rng) -> std::optional<Json> {
    auto r = vitali_select(pick_family(rng));
    return contract_failure(r, verify_selection_contract(r));
  });
  run.run("cf-lebesgue-contract", [](std::mt19937_64& rng) -> std::optional<Json> {
    BoxFamily f = pick_family(rng);
    Rat d = make_rat(std::uniform_int_distribution<long>(1, 7)(rng), 8);
    auto r = cf_select_lebesgue(f, d);
    return contract_failure(r, verify_selection_contract(r, d));
  });
  run.run("cf-weighted-contract", [](std::mt19937_64& rng) -> std::optional<Json> {
    int dim = std::uniform_int_distribution<int>(1, 2)(rng);
    int n = dim == 1 ? 16 : 8;
    GridWeight w = random_weight(rng, dim, n);
    BoxFamily f = random_grid_family(rng, dim, n, std::uniform_int_distribution<std::size_t>(1, 10)(rng));
    Rat xi = make_rat(std::uniform_int_distribution<long>(1, 7)(rng), 8);
    auto r = cf_select_weighted(f, w, xi);
    return contract_failure(r, verify_selection_contract(r, xi, &w));
  });
  run.run("overlap2-contract", [](std::mt19937_64& rng) -> std::optional<Json> {
    auto iv = random_intervals(rng, std::uniform_int_distribution<std::size_t>(1, 12)(rng));
    auto chosen = overlap2_select_1d(iv);
    auto c = verify_overlap2(iv, chosen);
    if (c.all_pass()) return std::nullopt;
    Json j = to_json(c);
    Json a = Json::array();
    for (const auto& i : iv) a.push_back({to_string(i.lo), to_string(i.hi)});
    j["intervals"] = a;
    return j;
  });
  run.run("constant-weight-cf-matches-lebesgue", [](std::mt19937_64& rng) -> std::optional<Json> {
    int dim = std::uniform_int_distribution<int>(1, 2)(rng);
    int n = dim == 1 ? 16 : 8;
    WeightFamilySpec s;
    s.dim = dim;
    s.resolution = n;
    GridWeight w = generate_weight(s);
    BoxFamily f = random_grid_family(rng, dim, n, std::uniform_int_distribution<std::size_t>(1, 10)(rng));
    Rat xi = make_rat(std::uniform_int_distribution<long>(1, 7)(rng), 8);
    auto a = cf_select_weighted(f, w, xi);
    auto b = cf_select_lebesgue(f, xi);
    if (a.selected == b.selected) return std::nullopt;
    Json j = family_case(f, xi);
    j["weighted_selected"] = a.selected;
    j["lebesgue_selected"] = b.selected;
    return j;
  });
}

void weights_suite(Runner& run) {
  run.once("constant-weight-constants", []() -> std::optional<Json> {
    for (int dim = 1; dim <= 2; ++dim) {
      WeightFamilySpec s;
      s.dim = dim;
      s.resolution = dim == 1 ? 32 : 16;
      GridWeight w = generate_weight(s);
      auto near = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); };
      double ap = ap_constant(w, 2), fw = fujii_wilson(w), h = hruscev_constant(w), dbl = doubling_constant(w),
             g = sidelength_growth_exponent(w);
      if (!near(ap, 1) || !near(fw, 1) || !near(h, 1) || !near(dbl, std::ldexp(1.0, dim)) || !near(g, dim))
        return Json{{"dim", dim}, {"ap2", ap}, {"fujii_wilson", fw}, {"hruscev", h}, {"doubling", dbl}, {"gamma", g}};
    }
    return std::nullopt;
  });
  run.run("constant-orderings", [](std::mt19937_64& rng) -> std::optional<Json> {
    int dim = std::uniform_int_distribution<int>(1, 2)(rng);
    GridWeight w = random_weight(rng, dim, dim == 1 ? 16 : 8);
    const double tol = 1e-9;
    double a2 = ap_constant(w, 2), a4 = ap_constant(w, 4), a8 = ap_constant(w, 8);
    double h = hruscev_constant(w), fw = fujii_wilson(w);
    bool ok = a2 >= 1 - tol && a4 <= a2 * (1 + tol) && a8 <= a4 * (1 + tol) && h <= a8 * (1 + tol) &&
              h >= 1 - tol && fw >= 1 - tol && doubling_constant(w) >= 1 - tol;
    if (ok) return std::nullopt;
    Json j = to_json(w);
    j["ap"] = {a2, a4, a8};
    j["hruscev"] = h;
    j["fujii_wilson"] = fw;
    return j;
  });
  run.run("superlevel-lift-monotone", [](std::mt19937_64& rng) -> std::optional<Json> {
    int dim = std::uniform_int_distribution<int>(1, 2)(rng);
    int n = dim == 1 ? 16 : 8;
    GridSet e = random_grid_set(rng, dim, n);
    Rat alpha = make_rat(std::uniform_int_distribution<long>(1, 19)(rng), 20);
    GridWeight leb = GridWeight::lebesgue(dim, n), leb2 = GridWeight::lebesgue(dim, 2 * n);
    GridSet k = superlevel(MaximalVariant::uncentered, leb, e, alpha);
    GridSet k2 = superlevel(MaximalVariant::uncentered, leb2, lift(e, 2), alpha);
    if (lift(k, 2).subset_of(k2)) return std::nullopt;
    Json j = to_json(e);
    j["alpha"] = to_string(alpha);
    return j;
  });
}

Json instance_json(const GridWeight& w, const GridSet& e, const Rat& alpha, const Rat& param) {
  return Json{{"weight", to_json(w)}, {"set", to_json(e)}, {"alpha", to_string(alpha)}, {"param", to_string(param)}};
}

struct PipelineInstance {
  GridWeight w;
  GridSet e;
  Rat alpha, xi;
};

PipelineInstance pipeline_instance(std::mt19937_64& rng) {
  int dim = std::uniform_int_distribution<int>(1, 2)(rng);
  int n = dim == 1 ? 16 : 8;
  GridWeight w = random_weight(rng, dim, n);
  GridSet e = random_grid_set(rng, dim, n);
  Rat alpha = make_rat(std::uniform_int_distribution<long>(1, 19)(rng), 20);
  // xi uniformly among the multiples of 1/64 strictly inside (1 - alpha, 1)
  long lo = static_cast<long>(to_double((1 - alpha) * 64)) + 1;
  Rat xi = make_rat(std::uniform_int_distribution<long>(lo, 63)(rng), 64);
  return {std::move(w), std::move(e), alpha, xi};
}

void pipelines_suite(Runner& run) {
  run.run("upper-bound-chain", [](std::mt19937_64& rng) -> std::optional<Json> {
    auto in = pipeline_instance(rng);
    if (set_units(in.w, in.e) == 0) return std::nullopt;
    auto r = upper_bound_pipeline(in.w, in.e, in.alpha, in.xi);
    if (r.all_pass()) return std::nullopt;
    Json j = instance_json(in.w, in.e, in.alpha, in.xi);
    j["report"] = to_json(r);
    return j;
  });
  run.run("halo-decomposition", [](std::mt19937_64& rng) -> std::optional<Json> {
    auto in = pipeline_instance(rng);
    auto r = weighted_halo_decomposition(in.w, in.e, in.alpha);
    if (r.all_pass()) return std::nullopt;
    Json j = instance_json(in.w, in.e, in.alpha, r.delta);
    j["report"] = to_json(r);
    return j;
  });
}

}  // namespace

VerifyReport verify_lemmas(const std::string& suite, std::size_t trials, std::uint64_t seed) {
  static const std::vector<std::string> names = {"geometry", "covering", "weights", "pipelines"};
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    fail(Errc::invalid_argument, "unknown suite '" + suite + "'");
  VerifyReport rep;
  rep.suite = suite;
  rep.trials = trials;
  rep.seed = seed;
  if (trials == 0) rep.warnings.push_back("trials = 0: nothing was checked");
  for (const auto& name : names) {
    if (suite != "all" && suite != name) continue;
    Runner run(name, trials, seed, rep);
    if (name == "geometry") geometry_suite(run);
    else if (name == "covering") covering_suite(run);
    else if (name == "weights") weights_suite(run);
    else pipelines_suite(run);
  }
  return rep;
}

Json to_json(const VerifyReport& r) {
  Json j = Json::object();
  j["format_version"] = kFormatVersion;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  j["warnings"] = r.warnings;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj = {{"suite", c.suite}, {"name", c.name}, {"trials", c.trials}, {"failures", c.failures}, {"pass", c.pass()}};
    if (!c.pass()) cj["reproducer"] = c.reproducer;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace tlab
