#pragma once

// Greedy selection algorithms on cube families and their independent
// verification.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tauberian/exact1d.hpp"
#include "tauberian/geometry.hpp"
#include "tauberian/weights.hpp"

namespace tlab {

enum class SelectionKind { vitali, cf_lebesgue, cf_weighted };

const char* kind_name(SelectionKind k);
// Throws invalid-argument on an unknown name.
SelectionKind parse_kind(const std::string& name);

struct Certificate {
  std::size_t rejected = 0;  // index into the input family
  // Vitali: selected box of at least the same side meeting the rejected one.
  std::optional<std::size_t> by;
  // CF: overlap fraction |Q n U selected| / |Q| (weighted: w-fraction) at rejection.
  Rat overlap_fraction;
};

struct SelectionResult {
  SelectionKind kind = SelectionKind::vitali;
  BoxFamily input;
  std::vector<std::size_t> scan_order;  // order in which the input was visited
  std::vector<std::size_t> selected;    // input indices, in scan order
  std::vector<std::size_t> rejected;    // input indices, in scan order
  std::vector<Certificate> certificates;  // one per rejected box
  std::vector<std::size_t> equality_accepted;  // CF boxes accepted with equality in the test

  BoxFamily selected_family() const;
};

SelectionResult vitali_select(const BoxFamily& f);
// Requires the decreasing tag; ordering-violation otherwise.
SelectionResult cf_select_lebesgue(const BoxFamily& f, const Rat& delta);
// Boxes must be grid cubes of w's grid (unsupported-geometry otherwise).
SelectionResult cf_select_weighted(const BoxFamily& f, const GridWeight& w, const Rat& xi);

// Grid cube of w's grid matching b exactly, or nullopt.
std::optional<GridCube> as_grid_cube(const Box& b, const GridWeight& w);
Box to_box(const GridCube& q, int dim, int resolution);

std::map<std::size_t, BoxFamily> satellite_decompose(const BoxFamily& f);

std::vector<std::size_t> overlap2_select_1d(const std::vector<Interval>& intervals);

struct Clause {
  std::string name;
  bool pass = true;
  Rat defect;  // 0 when the clause holds
  std::string detail;
};

struct ContractReport {
  std::vector<Clause> clauses;
  bool all_pass() const;
};

// param is delta for cf-lebesgue, xi for cf-weighted, unused for vitali.
ContractReport verify_selection_contract(const SelectionResult& r, const Rat& param = Rat(0),
                                         const GridWeight* w = nullptr);
ContractReport verify_overlap2(const std::vector<Interval>& intervals, const std::vector<std::size_t>& chosen);

}  // namespace tlab
