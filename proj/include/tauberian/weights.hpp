#pragma once

// Weights discretized on an N^n grid over [0,1)^n (n = 1 or 2), stored as
// cell masses, and the weight constants computed over grid-aligned cubes.
//
// Masses are held in fixed point: every cell carries an integer number of
// units and w(Q) is an exact 128-bit prefix-sum difference. Exact masses let
// the selection algorithms and the proof replays compare weighted quantities
// without tolerances.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tlab {

// Cube [corner/N, (corner+side)/N]^n; unused coordinates stay 0.
struct GridCube {
  std::array<int, 2> corner{0, 0};
  int side = 1;
};

struct WeightMeta {
  std::string family;
  std::uint64_t seed = 0;
};

class GridWeight {
 public:
  // Masses are quantized to units of 2^-K with K chosen so the total is close
  // to 2^60. Positive masses never quantize to zero.
  GridWeight(int dim, int resolution, const std::vector<double>& masses, WeightMeta meta = {});

  // Every cell carries one unit; cell mass is N^-n, so w(Q) = |Q|.
  static GridWeight lebesgue(int dim, int resolution);

  int dim() const { return dim_; }
  int resolution() const { return n_; }
  std::size_t cells() const { return units_.size(); }
  const WeightMeta& meta() const { return meta_; }

  const std::vector<std::int64_t>& units() const { return units_; }
  // Mass of one unit.
  double unit_mass() const { return unit_mass_; }
  // Cell masses (quantized), row-major with the last axis fastest.
  std::vector<double> values() const;
  double cell_mass(std::size_t cell) const { return static_cast<double>(units_[cell]) * unit_mass_; }
  // Cell mass divided by cell volume.
  double density(std::size_t cell) const;

  std::size_t index(int i, int j = 0) const { return dim_ == 1 ? std::size_t(i) : std::size_t(i) * n_ + j; }

  void check_cube(const GridCube& q) const;
  __int128 mass_units(const GridCube& q) const;
  __int128 total_units() const { return prefix_.back(); }
  double mass(const GridCube& q) const;
  double total_mass() const;
  double volume(const GridCube& q) const;
  double average(const GridCube& q) const { return mass(q) / volume(q); }

  // Calls f(cube) for every grid cube inside the domain, by increasing side.
  template <class F>
  void for_each_cube(F f) const {
    for (int s = 1; s <= n_; ++s)
      for (int x = 0; x + s <= n_; ++x) {
        if (dim_ == 1) {
          f(GridCube{{x, 0}, s});
          continue;
        }
        for (int y = 0; y + s <= n_; ++y) f(GridCube{{x, y}, s});
      }
  }

 private:
  GridWeight() = default;
  void build_prefix();

  int dim_ = 1;
  int n_ = 1;
  std::vector<std::int64_t> units_;
  std::vector<__int128> prefix_;  // (N+1)^n summed table
  double unit_mass_ = 1;
  WeightMeta meta_;
};

enum class WeightFamily { constant, power, checkerboard, log_smooth_random };

struct WeightFamilySpec {
  WeightFamily family = WeightFamily::constant;
  int dim = 1;
  int resolution = 64;
  double exponent = 0;             // power: |x - x0|^a
  std::array<double, 2> center{};  // power: x0
  int levels = 2;                  // checkerboard: 2^levels blocks per axis
  double contrast = 4;             // checkerboard: density ratio of the two colors
  std::uint64_t seed = 0;          // log-smooth-random
  int smoothness = 4;              // log-smooth-random: box-filter radius in cells
  double amplitude = 1;            // log-smooth-random: std-dev of log w before smoothing
};

std::string family_name(WeightFamily f);
WeightFamily parse_family(const std::string& name);

GridWeight generate_weight(const WeightFamilySpec& spec);

// sup over grid cubes of avg(w) * avg(w^{-1/(p-1)})^{p-1}, dual taken on cell densities.
double ap_constant(const GridWeight& w, double p);
double fujii_wilson(const GridWeight& w);
double hruscev_constant(const GridWeight& w);
double doubling_constant(const GridWeight& w);

std::map<double, double> growth_profile(const GridWeight& w, const std::vector<double>& t_values);

struct GrowthFit {
  double c1 = 0;
  double c2 = 0;
  double ainfty_bound = 0;  // c2 (1 + log c1)
  std::size_t points_used = 0;
};
GrowthFit fit_growth_exponent(const std::map<double, double>& profile);

struct ReverseHolder {
  double epsilon = 0;
  std::string diagnostic;
};
ReverseHolder reverse_holder_exponent(const GridWeight& w, double constant = 2);

double sidelength_growth_exponent(const GridWeight& w, bool concentric_only = false);

struct WeightConstants {
  std::map<double, double> ap;
  double fujii_wilson = 0;
  double hruscev = 0;
  double doubling = 0;
  double rh_epsilon = 0;
  double gamma = 0;
  GrowthFit growth;
};

const std::vector<double>& default_growth_ts();
WeightConstants compute_constants(const GridWeight& w, const std::vector<double>& ps);

}  // namespace tlab
