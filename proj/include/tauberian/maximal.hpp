#pragma once

// Grid maximal operators of characteristic functions on the N^n grid. The
// measure argument is a GridWeight; GridWeight::lebesgue gives the Lebesgue
// case. Superlevel sets use exact integer comparisons mu(Q n E) > alpha mu(Q).

#include <cstdint>
#include <vector>

#include "tauberian/rational.hpp"
#include "tauberian/weights.hpp"

namespace tlab {

struct GridSet {
  int dim = 1;
  int resolution = 1;
  std::vector<std::uint8_t> cells;

  GridSet() = default;
  GridSet(int dim, int resolution);
  static GridSet from_indices(int dim, int resolution, const std::vector<std::size_t>& idx);
  static GridSet full(int dim, int resolution);

  std::size_t size() const { return cells.size(); }
  std::size_t count() const;
  bool contains(std::size_t c) const { return cells[c] != 0; }
  bool subset_of(const GridSet& other) const;
  std::vector<std::size_t> indices() const;

  friend bool operator==(const GridSet&, const GridSet&) = default;
};

// Refines each cell into factor^n cells.
GridSet lift(const GridSet& e, int factor);
GridWeight lift(const GridWeight& w, int factor);

enum class MaximalVariant { uncentered, centered, dyadic };

const char* variant_name(MaximalVariant v);
MaximalVariant parse_variant(const std::string& name);

// Value at cell c: max over admissible grid cubes Q containing c with mu(Q) > 0
// of mu(Q n E) / mu(Q).
std::vector<double> grid_maximal(MaximalVariant variant, const GridWeight& mu, const GridSet& e);

// Cells with maximal value strictly above alpha. Empty for alpha >= 1.
GridSet superlevel(MaximalVariant variant, const GridWeight& mu, const GridSet& e, const Rat& alpha);

// Units of mu carried by the set.
__int128 set_units(const GridWeight& mu, const GridSet& e);

}  // namespace tlab
