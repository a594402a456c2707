// tauberian-lab: command-line front end.
//
// Exit status: 0 success, 1 a verified property failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "tauberian/analysis.hpp"
#include "tauberian/errors.hpp"
#include "tauberian/io.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

namespace {

constexpr int kOk = 0, kAssertion = 1, kUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

// "0.9,0.95,0.99" or "lo:hi:count" (inclusive, evenly spaced).
std::vector<Rat> parse_alphas(const std::string& s) {
  std::vector<Rat> out;
  if (s.find(':') != std::string::npos) {
    auto p = split(s, ':');
    if (p.size() != 3) fail(Errc::parse_error, "--alphas range must be lo:hi:count");
    Rat lo = parse_rat(p[0]), hi = parse_rat(p[1]);
    long k = std::stol(p[2]);
    if (k < 1) fail(Errc::parse_error, "--alphas count must be positive");
    for (long i = 0; i < k; ++i) out.push_back(k == 1 ? lo : Rat(lo + (hi - lo) * make_rat(i, k - 1)));
    return out;
  }
  for (const auto& part : split(s, ',')) out.push_back(parse_rat(part));
  return out;
}

void emit(const std::string& out, const std::string& text, bool force) {
  if (out.empty() || out == "-") std::fputs(text.c_str(), stdout);
  else write_text_file(out, text, force);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tauberian constants, A_infinity weights and covering lemmas at desk scale"};
  app.require_subcommand(1);

  std::string out;
  bool force = false;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out,-o", out, "output file (stdout summary only when a file is given)");
    sub->add_flag("--force", force, "overwrite an existing output file");
  };

  // gen-weight
  auto* gen = app.add_subcommand("gen-weight", "generate a grid weight");
  std::string family = "constant";
  WeightFamilySpec spec;
  std::vector<double> center;
  gen->add_option("--family", family, "constant | power | checkerboard | log-smooth-random")->required();
  gen->add_option("--dim", spec.dim);
  gen->add_option("--resolution,-N", spec.resolution);
  gen->add_option("--exponent", spec.exponent);
  gen->add_option("--center", center)->delimiter(',');
  gen->add_option("--levels", spec.levels);
  gen->add_option("--contrast", spec.contrast);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--smoothness", spec.smoothness);
  gen->add_option("--amplitude", spec.amplitude);
  add_output(gen);

  // constants
  auto* cons = app.add_subcommand("constants", "compute weight constants");
  std::string weight_path;
  std::string ps = "2,4,8";
  cons->add_option("--weight", weight_path)->required();
  cons->add_option("--p", ps, "comma-separated exponents for A_p");
  add_output(cons);

  // maximal
  auto* maxi = app.add_subcommand("maximal", "superlevel set of the maximal function of an indicator");
  std::string set_path, alpha_s = "1/2", variant = "uncentered", engine_s = "grid";
  maxi->add_option("--set", set_path, "grid set JSON (grid engine) or interval set JSON (exact-1d)")->required();
  maxi->add_option("--weight", weight_path, "weight JSON; Lebesgue when omitted");
  maxi->add_option("--alpha", alpha_s);
  maxi->add_option("--variant", variant, "uncentered | centered | dyadic");
  maxi->add_option("--engine", engine_s, "grid | exact-1d");
  add_output(maxi);

  // select
  auto* sel = app.add_subcommand("select", "run or verify a covering selection");
  std::string kind_s = "vitali", boxes_path, param_s, verify_path;
  sel->add_option("--kind", kind_s, "vitali | cf-lebesgue | cf-weighted");
  sel->add_option("--boxes", boxes_path, "box family JSON");
  sel->add_option("--weight", weight_path);
  sel->add_option("--xi,--delta", param_s, "selection level");
  sel->add_option("--verify", verify_path, "check a stored selection result instead of selecting");
  add_output(sel);

  // tauberian
  auto* tau = app.add_subcommand("tauberian", "estimate sharp Tauberian constants");
  std::string setting_s = "lebesgue", strategy_s = "structured", alphas_s = "0.5";
  TauberianQuery q;
  std::optional<std::uint64_t> seed_opt;
  tau->add_option("--setting", setting_s, "lebesgue | weighted-operator | weighted-ambient");
  tau->add_option("--engine", engine_s, "grid | exact-1d");
  tau->add_option("--strategy", strategy_s, "exhaustive | structured | local-search | structured+local-search");
  tau->add_option("--alphas", alphas_s, "list a,b,c or range lo:hi:count");
  tau->add_option("--weight", weight_path);
  tau->add_option("--dim", q.dim);
  tau->add_option("--resolution,-N", q.resolution);
  tau->add_option("--seed", seed_opt);
  tau->add_option("--budget", q.budget);
  tau->add_option("--restarts", q.restarts);
  add_output(tau);

  // verify-lemmas
  auto* ver = app.add_subcommand("verify-lemmas", "run randomized property suites");
  std::string suite = "all";
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  ver->add_option("--suite", suite, "geometry | covering | weights | pipelines | all");
  ver->add_option("--trials", trials);
  ver->add_option("--seed", seed);
  add_output(ver);

  // report
  auto* rep = app.add_subcommand("report", "corpus consistency report (CSV)");
  std::string corpus_path, report_alphas = "0.9:0.99:10";
  ReportOptions ropts;
  rep->add_option("--corpus", corpus_path)->required();
  rep->add_option("--alphas", report_alphas);
  rep->add_option("--seed", ropts.seed);
  rep->add_option("--budget", ropts.budget);
  rep->add_option("--c-n", ropts.consts.c_n, "dimensional constant used by the embedding bound");
  add_output(rep);

  // demo-counterexample
  auto* demo = app.add_subcommand("demo-counterexample", "atomic measure without a Solyanik estimate");
  long jmax = 1000;
  int doublings = 2;
  std::string demo_alpha = "9/10";
  demo->add_option("--J", jmax);
  demo->add_option("--alpha", demo_alpha);
  demo->add_option("--doublings", doublings);
  add_output(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      spec.family = parse_family(family);
      for (std::size_t a = 0; a < center.size() && a < 2; ++a) spec.center[a] = center[a];
      GridWeight w = generate_weight(spec);
      emit(out, dump(to_json(w)), force);
      if (!out.empty()) std::printf("gen-weight: %s dim=%d N=%d -> %s\n", family.c_str(), w.dim(), w.resolution(), out.c_str());
      return kOk;
    }
    if (cons->parsed()) {
      GridWeight w = weight_from_json(read_json_file(weight_path));
      std::vector<double> pv;
      for (const auto& p : split(ps, ',')) pv.push_back(to_double(parse_rat(p)));
      WeightConstants c = compute_constants(w, pv);
      emit(out, dump(to_json(c)), force);
      if (!out.empty())
        std::printf("constants: fujii_wilson=%s hruscev=%s doubling=%s\n", format_double(c.fujii_wilson).c_str(),
                    format_double(c.hruscev).c_str(), format_double(c.doubling).c_str());
      return kOk;
    }
    if (maxi->parsed()) {
      Rat alpha = parse_rat(alpha_s);
      Json doc = read_json_file(set_path);
      Json result;
      if (parse_engine(engine_s) == Engine::exact_1d) {
        IntervalSet e = interval_set_from_json(doc);
        std::optional<PiecewiseWeight1D> pw;
        if (!weight_path.empty()) pw.emplace(PiecewiseWeight1D::from_grid(weight_from_json(read_json_file(weight_path))));
        IntervalSet halo = exact_halo_1d(e, alpha, pw ? &*pw : nullptr);
        result = to_json(halo);
        result["ratio"] = to_string(measure_1d(halo, pw ? &*pw : nullptr) / measure_1d(e, pw ? &*pw : nullptr));
      } else {
        GridSet e = grid_set_from_json(doc);
        GridWeight w = weight_path.empty() ? GridWeight::lebesgue(e.dim, e.resolution)
                                           : weight_from_json(read_json_file(weight_path));
        GridSet k = superlevel(parse_variant(variant), w, e, alpha);
        result = to_json(k);
        result["ratio"] = to_string(rat_from_int128(set_units(w, k), set_units(w, e)));
      }
      emit(out, dump(result), force);
      if (!out.empty()) std::printf("maximal: ratio %s -> %s\n", result["ratio"].get<std::string>().c_str(), out.c_str());
      return kOk;
    }
    if (sel->parsed()) {
      std::optional<GridWeight> w;
      if (!weight_path.empty()) w = weight_from_json(read_json_file(weight_path));
      if (!verify_path.empty()) {
        SelectionResult r = selection_from_json(read_json_file(verify_path));
        Rat param = param_s.empty() ? Rat(0) : parse_rat(param_s);
        ContractReport c = verify_selection_contract(r, param, w ? &*w : nullptr);
        emit(out, dump(to_json(c)), force);
        std::size_t failed = 0;
        for (const auto& cl : c.clauses) failed += !cl.pass;
        std::printf("select --verify: %s (%zu of %zu clauses failed)\n", c.all_pass() ? "pass" : "FAIL", failed,
                    c.clauses.size());
        return c.all_pass() ? kOk : kAssertion;
      }
      if (boxes_path.empty()) fail(Errc::invalid_argument, "select needs --boxes or --verify");
      BoxFamily f = box_family_from_json(read_json_file(boxes_path));
      SelectionKind kind = parse_kind(kind_s);
      if (kind != SelectionKind::vitali && f.ordering != Ordering::decreasing_sidelength)
        f = BoxFamily::sorted_decreasing(f.boxes);
      SelectionResult r;
      if (kind == SelectionKind::vitali) {
        r = vitali_select(f);
      } else {
        if (param_s.empty()) fail(Errc::invalid_argument, "CF selection needs --xi/--delta");
        Rat param = parse_rat(param_s);
        if (kind == SelectionKind::cf_lebesgue) {
          r = cf_select_lebesgue(f, param);
        } else {
          if (!w) fail(Errc::invalid_argument, "cf-weighted needs --weight");
          r = cf_select_weighted(f, *w, param);
        }
      }
      emit(out, dump(to_json(r)), force);
      if (!out.empty()) std::printf("select: %s kept %zu of %zu -> %s\n", kind_name(kind), r.selected.size(), f.size(), out.c_str());
      return kOk;
    }
    if (tau->parsed()) {
      q.setting = parse_setting(setting_s);
      q.engine = parse_engine(engine_s);
      q.strategy = parse_strategy(strategy_s);
      q.seed = seed_opt;
      std::optional<GridWeight> w;
      if (!weight_path.empty()) {
        w = weight_from_json(read_json_file(weight_path));
        q.dim = w->dim();
        q.resolution = w->resolution();
      }
      auto alphas = parse_alphas(alphas_s);
      TauberianCurve curve;
      if (q.engine == Engine::exact_1d && q.setting == Setting::lebesgue && weight_path.empty() &&
          !tau->count("--resolution")) {
        // The exact Lebesgue value needs no search.
        curve.query = q;
        for (const auto& a : alphas) {
          auto ex = exact_tauberian_1d(a);
          TauberianEstimate est;
          est.value = ex.value;
          est.interval_witness = ex.witness;
          est.upper_reference = ex.value;
          curve.points.push_back({a, est});
        }
      } else {
        curve = tauberian_curve(q, alphas, w ? &*w : nullptr);
      }
      emit(out, curve_csv(curve), force);
      std::string values;
      for (const auto& p : curve.points) values += (values.empty() ? "" : ",") + to_string(p.estimate.value);
      std::fprintf(out.empty() ? stderr : stdout, "tauberian: %s %s values %s\n", setting_name(q.setting),
                   engine_name(q.engine), values.c_str());
      return kOk;
    }
    if (ver->parsed()) {
      VerifyReport r = verify_lemmas(suite, trials, seed);
      emit(out, dump(to_json(r)), force);
      std::size_t failed = 0;
      for (const auto& c : r.checks) failed += !c.pass();
      for (const auto& wmsg : r.warnings) std::fprintf(stderr, "warning: %s\n", wmsg.c_str());
      std::fprintf(out.empty() ? stderr : stdout, "verify-lemmas: %s suite=%s trials=%zu checks=%zu failed=%zu\n",
                   r.pass() ? "pass" : "FAIL", suite.c_str(), trials, r.checks.size(), failed);
      return r.pass() ? kOk : kAssertion;
    }
    if (rep->parsed()) {
      auto corpus = corpus_from_json(read_json_file(corpus_path));
      std::vector<GridWeight> ws;
      std::vector<std::string> ids;
      for (auto& e : corpus) {
        ids.push_back(e.id);
        ws.push_back(std::move(e.weight));
      }
      for (const auto& a : parse_alphas(report_alphas)) ropts.alphas.push_back(to_double(a));
      ConsistencyReport r = consistency_report(ws, ids, ropts);
      emit(out, report_csv(r), force);
      std::fprintf(out.empty() ? stderr : stdout, "report: %zu weights, K1=%s, c_n=%s\n", r.rows.size(),
                   format_double(r.k1).c_str(), format_double(ropts.consts.c_n).c_str());
      return kOk;
    }
    if (demo->parsed()) {
      auto r = counterexample_demo(jmax, parse_rat(demo_alpha), doublings);
      emit(out, dump(to_json(r)), force);
      std::fprintf(out.empty() ? stderr : stdout, "demo-counterexample: J=%ld lower bound %s%s\n", jmax,
                   format_double(to_double(r.lower_bound)).c_str(), r.halo_beyond_e_empty ? " (empty halo beyond E)" : "");
      return kOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "tauberian-lab: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tauberian-lab: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
