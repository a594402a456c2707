#pragma once

// Randomized property suites over the library, plus the instance generators
// they share with the test binaries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tauberian/io.hpp"

namespace tlab {

// Cubes with centers in [-4,4]^dim and sides in (0,4], coordinates with
// denominators 1, 2, 3, 4 or 8.
std::vector<Box> random_boxes(std::mt19937_64& rng, int dim, std::size_t count);
BoxFamily random_decreasing_family(std::mt19937_64& rng, int dim, std::size_t count);
// Grid-aligned cubes of an N^dim grid, sorted by decreasing side.
BoxFamily random_grid_family(std::mt19937_64& rng, int dim, int resolution, std::size_t count);
GridWeight random_weight(std::mt19937_64& rng, int dim, int resolution);
// Nonempty random grid set: scattered cells or a few cubes.
GridSet random_grid_set(std::mt19937_64& rng, int dim, int resolution);
std::vector<Interval> random_intervals(std::mt19937_64& rng, std::size_t count);

// Small nonconcentric pair in increasing order; the identity fails for it.
BoxFamily ordering_violation_control();

// Inclusion-exclusion union measure, independent of the compressed grid.
Rat union_measure_oracle(std::span<const Box> boxes);

struct CheckResult {
  std::string suite;
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  Json reproducer;  // minimized failing input, null when all trials pass
  std::string detail;
  bool pass() const { return failures == 0; }
};

struct VerifyReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  bool pass() const;
};

// suite: geometry | covering | weights | pipelines | all
VerifyReport verify_lemmas(const std::string& suite, std::size_t trials, std::uint64_t seed);
Json to_json(const VerifyReport& r);

}  // namespace tlab
