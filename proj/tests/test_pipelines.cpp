#include <doctest.h>

#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/pipelines.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

namespace {

GridWeight constant(int dim, int n) {
  WeightFamilySpec s;
  s.dim = dim;
  s.resolution = n;
  return generate_weight(s);
}

}  // namespace

TEST_CASE("upper bound chain on one cell") {
  GridWeight w = constant(1, 16);
  GridSet e = GridSet::from_indices(1, 16, {7});
  auto r = upper_bound_pipeline(w, e, Rat(2, 5), Rat(4, 5));
  CHECK(r.all_pass());
  CHECK(r.bound >= r.measured);
  CHECK(r.dilation <= 3);
  CHECK(r.measured == 3);  // cells 6, 7, 8 have a cube with ratio 1/2 > 2/5
  for (const auto& l : r.links) CHECK_MESSAGE(l.pass, l.name);
}

TEST_CASE("upper bound grows as xi approaches 1 - alpha") {
  GridWeight w = constant(1, 16);
  GridSet e = GridSet::from_indices(1, 16, {3, 4, 9});
  Rat prev = 0;
  for (Rat xi : {Rat(15, 16), Rat(3, 4), Rat(5, 8), Rat(17, 32)}) {
    auto r = upper_bound_pipeline(w, e, Rat(1, 2), xi);
    CHECK(r.all_pass());
    Rat factor = xi / (xi - Rat(1, 2));
    CHECK(factor > prev);
    prev = factor;
  }
  CHECK_THROWS_AS(upper_bound_pipeline(w, e, Rat(1, 2), Rat(1, 2)), Error);
  try {
    upper_bound_pipeline(w, e, Rat(1, 2), Rat(1, 4));
  } catch (const Error& err) {
    CHECK(err.code() == Errc::division_degenerate);
  }
}

TEST_CASE("halo decomposition") {
  GridWeight w = constant(1, 16);
  auto full = weighted_halo_decomposition(w, GridSet::full(1, 16), Rat(1, 2));
  CHECK(full.all_pass());
  CHECK(full.term_i == 0);
  CHECK(full.term_ii == 0);
  CHECK(full.halo_mass == full.set_mass);

  auto one = weighted_halo_decomposition(w, GridSet::from_indices(1, 16, {5}), Rat(2, 5), Rat(31, 40));
  CHECK(one.all_pass());
  CHECK(one.term_i >= 0);
  CHECK(one.term_ii >= 0);
  CHECK(one.halo_mass <= one.set_mass + one.term_i + one.term_ii);
  for (const auto& s : one.satellites) CHECK(one.delta * s.outside <= (1 - one.alpha) * s.union_measure);

  CHECK_THROWS_AS(weighted_halo_decomposition(w, GridSet::full(1, 16), Rat(1, 2), Rat(1, 2)), Error);
  CHECK_THROWS_AS(weighted_halo_decomposition(w, GridSet::full(1, 16), Rat(1, 2), Rat(1)), Error);
  Rat d = default_delta(Rat(3, 4));
  CHECK(d > Rat(1, 4));
  CHECK(d < 1);
  CHECK(to_double(d) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("random replays") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 60; ++t) {
    int dim = 1 + t % 2;
    int n = dim == 1 ? 16 : 8;
    GridWeight w = random_weight(rng, dim, n);
    GridSet e = random_grid_set(rng, dim, n);
    Rat alpha = make_rat(1 + t % 19, 20);
    Rat xi = (1 - alpha + 1) / 2;
    if (set_units(w, e) > 0) {
      auto r = upper_bound_pipeline(w, e, alpha, xi);
      CHECK(r.all_pass());
    }
    CHECK(weighted_halo_decomposition(w, e, alpha).all_pass());
  }
}
