#include "tauberian/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tauberian/errors.hpp"

namespace tlab {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(Errc::parse_error, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long long>();
}

double number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      std::string s = j.get<std::string>();
      double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  bad(where, "expected a number");
}

Rat rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  std::string text = str(j, where);
  try {
    return parse_rat(text);
  } catch (const Error& e) {
    bad(where, e.detail());
  }
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

void check_version(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find("format_version");
  if (it != j.end() && (!it->is_number_integer() || it->get<int>() != kFormatVersion))
    bad(where + ".format_version", "unsupported format version");
}

Json rat_json(const Rat& r) { return to_string(r); }

Json doc() {
  Json j = Json::object();
  j["format_version"] = kFormatVersion;
  return j;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(Errc::parse_error, path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text, bool force) {
  if (!force && std::filesystem::exists(path))
    fail(Errc::invalid_argument, path + " exists; pass --force to overwrite");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::invalid_argument, path + ": cannot write");
  out << text;
}

Json to_json(const BoxFamily& f) {
  Json j = doc();
  j["dim"] = f.dim();
  j["ordering"] = f.ordering == Ordering::decreasing_sidelength ? "decreasing" : "unordered";
  Json boxes = Json::array();
  for (const auto& b : f.boxes) {
    Json c = Json::array();
    for (const auto& x : b.center()) c.push_back(rat_json(x));
    boxes.push_back({{"center", c}, {"side", rat_json(b.side())}});
  }
  j["boxes"] = boxes;
  return j;
}

BoxFamily box_family_from_json(const Json& j) {
  check_version(j, "$");
  const long long dim = integer(field(j, "dim", "$"), "$.dim");
  if (dim < 1 || dim > 3) bad("$.dim", "dimension must be 1, 2 or 3");
  Ordering ord = Ordering::unordered;
  if (auto it = j.find("ordering"); it != j.end()) {
    std::string o = str(*it, "$.ordering");
    if (o == "decreasing") ord = Ordering::decreasing_sidelength;
    else if (o != "unordered") bad("$.ordering", "expected 'decreasing' or 'unordered'");
  }
  std::vector<Box> boxes;
  const Json& arr = array(field(j, "boxes", "$"), "$.boxes");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = "$.boxes[" + std::to_string(i) + "]";
    const Json& c = array(field(arr[i], "center", where), where + ".center");
    if (c.size() != std::size_t(dim)) bad(where + ".center", "coordinate count differs from dim");
    std::vector<Rat> center;
    for (std::size_t a = 0; a < c.size(); ++a) center.push_back(rational(c[a], where + ".center[" + std::to_string(a) + "]"));
    Rat side = rational(field(arr[i], "side", where), where + ".side");
    if (side <= 0) bad(where + ".side", "side must be positive");
    boxes.emplace_back(std::move(center), side);
  }
  try {
    return BoxFamily(std::move(boxes), ord);
  } catch (const Error& e) {
    bad("$.boxes", e.detail());
  }
}

Json to_json(const GridWeight& w) {
  Json j = doc();
  j["dim"] = w.dim();
  j["resolution"] = w.resolution();
  Json vals = Json::array();
  for (double v : w.values()) vals.push_back(format_double(v));
  j["values"] = vals;
  j["meta"] = {{"family", w.meta().family}, {"seed", w.meta().seed}};
  return j;
}

GridWeight weight_from_json(const Json& j) {
  check_version(j, "$");
  const long long dim = integer(field(j, "dim", "$"), "$.dim");
  const long long n = integer(field(j, "resolution", "$"), "$.resolution");
  if (dim < 1 || dim > 2) bad("$.dim", "dimension must be 1 or 2");
  if (n < 1 || n > 4096) bad("$.resolution", "resolution out of range");
  const Json& vals = array(field(j, "values", "$"), "$.values");
  std::size_t expect = dim == 1 ? std::size_t(n) : std::size_t(n * n);
  if (vals.size() != expect) bad("$.values", "expected " + std::to_string(expect) + " values");
  std::vector<double> masses;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double v = number(vals[i], "$.values[" + std::to_string(i) + "]");
    if (!std::isfinite(v) || v < 0) bad("$.values[" + std::to_string(i) + "]", "values must be finite and nonnegative");
    masses.push_back(v);
  }
  WeightMeta meta;
  if (auto it = j.find("meta"); it != j.end()) {
    if (auto f = it->find("family"); f != it->end()) meta.family = str(*f, "$.meta.family");
    if (auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_unsigned() && !s->is_number_integer()) bad("$.meta.seed", "expected an integer");
      meta.seed = s->get<std::uint64_t>();
    }
  }
  try {
    return GridWeight(int(dim), int(n), masses, meta);
  } catch (const Error& e) {
    bad("$.values", e.detail());
  }
}

Json to_json(const IntervalSet& s) {
  Json j = doc();
  Json iv = Json::array(), approx = Json::array();
  for (const auto& i : s.intervals()) {
    iv.push_back({rat_json(i.lo), rat_json(i.hi)});
    approx.push_back({to_double(i.lo), to_double(i.hi)});
  }
  j["intervals"] = iv;
  j["decimal"] = approx;
  j["measure"] = rat_json(s.measure());
  return j;
}

IntervalSet interval_set_from_json(const Json& j) {
  check_version(j, "$");
  const Json& arr = array(field(j, "intervals", "$"), "$.intervals");
  std::vector<Interval> iv;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = "$.intervals[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) bad(where, "expected a pair of endpoints");
    Interval x{rational(arr[i][0], where + "[0]"), rational(arr[i][1], where + "[1]")};
    if (x.lo >= x.hi) bad(where, "empty interval");
    iv.push_back(std::move(x));
  }
  return IntervalSet(std::move(iv));
}

Json to_json(const GridSet& e) {
  Json j = doc();
  j["dim"] = e.dim;
  j["resolution"] = e.resolution;
  j["cells"] = e.indices();
  return j;
}

GridSet grid_set_from_json(const Json& j) {
  check_version(j, "$");
  const long long dim = integer(field(j, "dim", "$"), "$.dim");
  const long long n = integer(field(j, "resolution", "$"), "$.resolution");
  if (dim < 1 || dim > 2) bad("$.dim", "dimension must be 1 or 2");
  if (n < 1 || n > 4096) bad("$.resolution", "resolution out of range");
  const Json& arr = array(field(j, "cells", "$"), "$.cells");
  GridSet e(static_cast<int>(dim), static_cast<int>(n));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    long long c = integer(arr[i], "$.cells[" + std::to_string(i) + "]");
    if (c < 0 || std::size_t(c) >= e.size()) bad("$.cells[" + std::to_string(i) + "]", "cell index out of range");
    e.cells[c] = 1;
  }
  return e;
}

Json to_json(const SelectionResult& r) {
  Json j = doc();
  j["kind"] = kind_name(r.kind);
  j["input"] = to_json(r.input);
  j["scan_order"] = r.scan_order;
  j["selected"] = r.selected;
  j["rejected"] = r.rejected;
  Json certs = Json::array();
  for (const auto& c : r.certificates) {
    Json cj = {{"rejected", c.rejected}};
    if (c.by) cj["by"] = *c.by;
    if (r.kind != SelectionKind::vitali) cj["overlap_fraction"] = rat_json(c.overlap_fraction);
    certs.push_back(cj);
  }
  j["certificates"] = certs;
  j["equality_accepted"] = r.equality_accepted;
  return j;
}

SelectionResult selection_from_json(const Json& j) {
  check_version(j, "$");
  SelectionResult r;
  std::string kind = str(field(j, "kind", "$"), "$.kind");
  try {
    r.kind = parse_kind(kind);
  } catch (const Error& e) {
    bad("$.kind", e.detail());
  }
  r.input = box_family_from_json(field(j, "input", "$"));
  auto indices = [&](const char* key) {
    std::vector<std::size_t> out;
    const Json& arr = array(field(j, key, "$"), std::string("$.") + key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      long long v = integer(arr[i], std::string("$.") + key + "[" + std::to_string(i) + "]");
      if (v < 0) bad(std::string("$.") + key, "negative index");
      out.push_back(std::size_t(v));
    }
    return out;
  };
  r.scan_order = indices("scan_order");
  r.selected = indices("selected");
  r.rejected = indices("rejected");
  if (j.contains("equality_accepted")) r.equality_accepted = indices("equality_accepted");
  const Json& certs = array(field(j, "certificates", "$"), "$.certificates");
  for (std::size_t i = 0; i < certs.size(); ++i) {
    std::string where = "$.certificates[" + std::to_string(i) + "]";
    Certificate c;
    long long rej = integer(field(certs[i], "rejected", where), where + ".rejected");
    if (rej < 0) bad(where + ".rejected", "negative index");
    c.rejected = std::size_t(rej);
    if (auto it = certs[i].find("by"); it != certs[i].end()) {
      long long by = integer(*it, where + ".by");
      if (by < 0) bad(where + ".by", "negative index");
      c.by = std::size_t(by);
    }
    if (auto it = certs[i].find("overlap_fraction"); it != certs[i].end())
      c.overlap_fraction = rational(*it, where + ".overlap_fraction");
    r.certificates.push_back(std::move(c));
  }
  return r;
}

Json to_json(const WeightConstants& c) {
  Json j = doc();
  for (const auto& [p, v] : c.ap) j["ap_" + format_double(p)] = v;
  j["fujii_wilson"] = c.fujii_wilson;
  j["hruscev"] = c.hruscev;
  j["doubling"] = c.doubling;
  j["rh_epsilon"] = c.rh_epsilon;
  j["gamma"] = c.gamma;
  j["growth_c1"] = c.growth.c1;
  j["growth_c2"] = c.growth.c2;
  j["growth_ainfty_bound"] = c.growth.ainfty_bound;
  return j;
}

Json to_json(const ContractReport& r) {
  Json j = doc();
  j["pass"] = r.all_pass();
  Json cl = Json::array();
  for (const auto& c : r.clauses)
    cl.push_back({{"name", c.name}, {"pass", c.pass}, {"defect", rat_json(c.defect)}, {"detail", c.detail}});
  j["clauses"] = cl;
  return j;
}

namespace {

Json links_json(const std::vector<Link>& links) {
  Json a = Json::array();
  for (const auto& l : links) a.push_back({{"name", l.name}, {"pass", l.pass}, {"lhs", rat_json(l.lhs)}, {"rhs", rat_json(l.rhs)}});
  return a;
}

}  // namespace

Json to_json(const UpperBoundReport& r) {
  Json j = doc();
  j["alpha"] = rat_json(r.alpha);
  j["xi"] = rat_json(r.xi);
  j["cover_cubes"] = r.cover_cubes;
  j["selected"] = r.selected;
  j["dilation"] = rat_json(r.dilation);
  j["enlargement"] = rat_json(r.enlargement);
  j["cover_ratio"] = rat_json(r.cover_ratio);
  j["bound"] = rat_json(r.bound);
  j["bound_decimal"] = to_double(r.bound);
  j["measured"] = rat_json(r.measured);
  j["measured_decimal"] = to_double(r.measured);
  j["pass"] = r.all_pass();
  j["links"] = links_json(r.links);
  return j;
}

Json to_json(const HaloDecomposition& r) {
  Json j = doc();
  j["alpha"] = rat_json(r.alpha);
  j["delta"] = rat_json(r.delta);
  j["cover_cubes"] = r.cover_cubes;
  j["selected"] = r.selected;
  j["dilation"] = rat_json(r.dilation);
  j["halo_mass"] = rat_json(r.halo_mass);
  j["set_mass"] = rat_json(r.set_mass);
  j["I"] = rat_json(r.term_i);
  j["II"] = rat_json(r.term_ii);
  j["total_check"] = r.total_check;
  Json sats = Json::array();
  for (const auto& s : r.satellites)
    sats.push_back({{"center", s.center}, {"members", s.members}, {"outside", rat_json(s.outside)},
                    {"union", rat_json(s.union_measure)}, {"pass", s.pass}});
  j["satellites"] = sats;
  j["pass"] = r.all_pass();
  j["links"] = links_json(r.links);
  return j;
}

Json to_json(const CounterexampleResult& r) {
  Json j = doc();
  j["lower_bound"] = rat_json(r.lower_bound);
  j["lower_bound_decimal"] = to_double(r.lower_bound);
  j["halo_beyond_e_empty"] = r.halo_beyond_e_empty;
  Json t = Json::array();
  for (const auto& row : r.growth_table)
    t.push_back({{"J", row.j_max}, {"bound", rat_json(row.bound)}, {"bound_decimal", to_double(row.bound)}});
  j["growth_table"] = t;
  return j;
}

std::string curve_csv(const TauberianCurve& c) {
  std::ostringstream out;
  out << "alpha,value,witness_size,strategy,engine\n";
  for (const auto& p : c.points)
    out << to_string(p.alpha) << ',' << format_double(to_double(p.estimate.value)) << ','
        << p.estimate.witness_size() << ',' << strategy_name(c.query.strategy) << ','
        << engine_name(c.query.engine) << '\n';
  return out.str();
}

std::string report_csv(const ConsistencyReport& r) {
  std::ostringstream out;
  out << "weight_id,a_infty_fw,hruscev,doubling,rh_eps,gamma,solyanik_c,solyanik_K,converse_bound,p0,c_n_used\n";
  for (const auto& row : r.rows)
    out << row.weight_id << ',' << format_double(row.fujii_wilson) << ',' << format_double(row.hruscev) << ','
        << format_double(row.doubling) << ',' << format_double(row.rh_epsilon) << ',' << format_double(row.gamma)
        << ',' << format_double(row.solyanik_c) << ',' << format_double(row.solyanik_K) << ','
        << format_double(row.converse_bound) << ',' << format_double(row.p0) << ',' << format_double(row.c_n_used)
        << '\n';
  return out.str();
}

WeightFamilySpec family_spec_from_json(const Json& j) {
  WeightFamilySpec s;
  std::string family = str(field(j, "family", "$"), "$.family");
  try {
    s.family = parse_family(family);
  } catch (const Error& e) {
    bad("$.family", e.detail());
  }
  if (j.contains("dim")) s.dim = int(integer(j["dim"], "$.dim"));
  if (j.contains("resolution")) s.resolution = int(integer(j["resolution"], "$.resolution"));
  if (j.contains("exponent")) s.exponent = number(j["exponent"], "$.exponent");
  if (j.contains("center")) {
    const Json& c = array(j["center"], "$.center");
    for (std::size_t a = 0; a < c.size() && a < 2; ++a) s.center[a] = number(c[a], "$.center");
  }
  if (j.contains("levels")) s.levels = int(integer(j["levels"], "$.levels"));
  if (j.contains("contrast")) s.contrast = number(j["contrast"], "$.contrast");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) bad("$.seed", "expected an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("smoothness")) s.smoothness = int(integer(j["smoothness"], "$.smoothness"));
  if (j.contains("amplitude")) s.amplitude = number(j["amplitude"], "$.amplitude");
  return s;
}

std::vector<CorpusEntry> corpus_from_json(const Json& j) {
  check_version(j, "$");
  const Json& arr = array(field(j, "weights", "$"), "$.weights");
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = "$.weights[" + std::to_string(i) + "]";
    CorpusEntry e{str(field(arr[i], "id", where), where + ".id"), GridWeight::lebesgue(1, 1)};
      const char* key = arr[i].contains("generate") ? "generate" : arr[i].contains("weight") ? "weight" : nullptr;
    if (!key) bad(where, "expected 'generate' or 'weight'");
    where += std::string(".") + key;
    try {
      if (key[0] == 'g')
        e.weight = generate_weight(family_spec_from_json(arr[i][key]));
      else
        e.weight = weight_from_json(arr[i][key]);
    } catch (const Error& err) {
      // Inner locations are relative to the nested document.
      std::string msg = err.detail();
      if (err.code() == Errc::parse_error && msg.starts_with("$")) fail(Errc::parse_error, where + msg.substr(1));
      bad(where, msg);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace tlab
