#pragma once

// Instrumented replays of the two upper-bound arguments on grid instances.
// Masses are exact: cell units times the weight's unit mass.

#include <string>
#include <vector>

#include "tauberian/covering.hpp"
#include "tauberian/maximal.hpp"
#include "tauberian/weights.hpp"

namespace tlab {

struct Link {
  std::string name;
  bool pass = true;
  Rat lhs, rhs;  // the link asserts lhs <= rhs (strict links say so in the name)
};

// Weighted-operator argument: K = {M_w chi_E > alpha}, cover cubes are all grid
// cubes Q with w(Q n E) > alpha w(Q), selected by cf_select_weighted at level xi.
struct UpperBoundReport {
  Rat alpha, xi;
  std::size_t cover_cubes = 0, selected = 0;
  Rat dilation;     // minimal t with union Q inside union tQ~
  Rat enlargement;  // w(snap(union tQ~)) / w(union Q~)
  Rat cover_ratio;  // w(union Q) / w(union Q~)
  Rat bound;        // enlargement * xi / (xi - (1 - alpha))
  Rat measured;     // w(K) / w(E)
  std::vector<Link> links;
  bool all_pass() const;
};

UpperBoundReport upper_bound_pipeline(const GridWeight& w, const GridSet& e, const Rat& alpha, const Rat& xi);

struct SatelliteCheck {
  std::size_t center = 0;   // index into the selected family
  std::size_t members = 0;
  Rat outside;              // |A_R|, Lebesgue
  Rat union_measure;        // |union Q_R|
  bool pass = true;         // delta |A_R| <= (1 - alpha) |union Q_R|
};

// Weighted-ambient argument: K = {M chi_E > alpha} measured by w, Lebesgue
// cover cubes selected by the Lebesgue CF rule at level delta.
struct HaloDecomposition {
  Rat alpha, delta;
  std::size_t cover_cubes = 0, selected = 0;
  Rat dilation;
  Rat halo_mass;  // w(K)
  Rat set_mass;   // w(E)
  Rat term_i;     // w(snap(union tQ~) \ union Q~)
  Rat term_ii;    // w(union Q~ \ E)
  bool total_check = true;
  std::vector<SatelliteCheck> satellites;
  std::vector<Link> links;
  bool all_pass() const;
};

// delta = 0 picks a rational approximation of sqrt(1 - alpha) inside (1 - alpha, 1).
HaloDecomposition weighted_halo_decomposition(const GridWeight& w, const GridSet& e, const Rat& alpha,
                                              const Rat& delta = Rat(0));

Rat default_delta(const Rat& alpha);

}  // namespace tlab
