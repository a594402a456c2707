#pragma once

// JSON and CSV formats. Every document carries "format_version": 1 and
// rationals travel as "p/q" strings. Malformed input raises parse-error with
// the offending location in the message.

#include <string>
#include <vector>

#include <json.hpp>

#include "tauberian/analysis.hpp"
#include "tauberian/covering.hpp"
#include "tauberian/exact1d.hpp"
#include "tauberian/geometry.hpp"
#include "tauberian/maximal.hpp"
#include "tauberian/pipelines.hpp"
#include "tauberian/tauberian.hpp"
#include "tauberian/weights.hpp"

namespace tlab {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json read_json_file(const std::string& path);
// Writes text to path; refuses to replace an existing file unless force is set.
void write_text_file(const std::string& path, const std::string& text, bool force);

Json to_json(const BoxFamily& f);
BoxFamily box_family_from_json(const Json& j);

Json to_json(const GridWeight& w);
GridWeight weight_from_json(const Json& j);

Json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const Json& j);

Json to_json(const GridSet& e);
GridSet grid_set_from_json(const Json& j);

Json to_json(const SelectionResult& r);
SelectionResult selection_from_json(const Json& j);

Json to_json(const WeightConstants& c);
Json to_json(const ContractReport& r);
Json to_json(const UpperBoundReport& r);
Json to_json(const HaloDecomposition& r);
Json to_json(const CounterexampleResult& r);

std::string curve_csv(const TauberianCurve& c);
std::string report_csv(const ConsistencyReport& r);

struct CorpusEntry {
  std::string id;
  GridWeight weight;
};

// {"format_version": 1, "weights": [{"id": ..., "generate": {family spec}} or
// {"id": ..., "weight": {weight document}}]}
std::vector<CorpusEntry> corpus_from_json(const Json& j);
WeightFamilySpec family_spec_from_json(const Json& j);

// "%.17g"
std::string format_double(double x);

}  // namespace tlab
