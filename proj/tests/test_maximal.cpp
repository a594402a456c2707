#include <doctest.h>

#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/exact1d.hpp"
#include "tauberian/maximal.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

TEST_CASE("grid maximal values, single cell") {
  GridWeight leb = GridWeight::lebesgue(1, 4);
  GridSet e = GridSet::from_indices(1, 4, {0});
  auto u = grid_maximal(MaximalVariant::uncentered, leb, e);
  CHECK(u == std::vector<double>{1, 0.5, 1.0 / 3, 0.25});
  auto d = grid_maximal(MaximalVariant::dyadic, leb, e);
  CHECK(d == std::vector<double>{1, 0.5, 0.25, 0.25});
  for (double v : grid_maximal(MaximalVariant::uncentered, leb, GridSet::full(1, 4))) CHECK(v == 1);
  CHECK_THROWS_AS(grid_maximal(MaximalVariant::dyadic, GridWeight::lebesgue(1, 6), GridSet(1, 6)), Error);
}

TEST_CASE("centered cubes use odd sides") {
  GridWeight leb = GridWeight::lebesgue(1, 5);
  GridSet e = GridSet::from_indices(1, 5, {2});
  auto c = grid_maximal(MaximalVariant::centered, leb, e);
  CHECK(c[2] == 1);
  CHECK(c[1] == doctest::Approx(1.0 / 3));
  // No odd cube centered at the boundary cell other than the cell itself fits.
  CHECK(c[0] == 0);
  CHECK(c[4] == 0);
}

TEST_CASE("superlevel sets") {
  GridWeight leb = GridWeight::lebesgue(1, 4);
  GridSet e = GridSet::from_indices(1, 4, {0});
  CHECK(superlevel(MaximalVariant::uncentered, leb, e, Rat(3, 10)) == GridSet::from_indices(1, 4, {0, 1, 2}));
  CHECK(superlevel(MaximalVariant::uncentered, leb, GridSet::full(1, 4), Rat(99, 100)) == GridSet::full(1, 4));
  CHECK(superlevel(MaximalVariant::uncentered, leb, e, Rat(1)).count() == 0);
  CHECK_THROWS_AS(superlevel(MaximalVariant::uncentered, leb, e, Rat(0)), Error);
}

TEST_CASE("superlevel agrees with maximal values") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    int dim = 1 + t % 2;
    int n = dim == 1 ? 16 : 8;
    GridWeight w = random_weight(rng, dim, n);
    GridSet e = random_grid_set(rng, dim, n);
    Rat alpha = make_rat(1 + t % 19, 20);
    for (auto v : {MaximalVariant::uncentered, MaximalVariant::centered, MaximalVariant::dyadic}) {
      auto vals = grid_maximal(v, w, e);
      GridSet k = superlevel(v, w, e, alpha);
      for (std::size_t c = 0; c < vals.size(); ++c) {
        CHECK(vals[c] >= 0);
        CHECK(vals[c] <= 1 + 1e-12);
        if (e.cells[c] && w.units()[c] > 0) CHECK(vals[c] == doctest::Approx(1));
        // Values within 1e-9 of alpha are ties decided exactly; skip them here.
        if (std::abs(vals[c] - to_double(alpha)) > 1e-9) CHECK((k.cells[c] != 0) == (vals[c] > to_double(alpha)));
      }
      GridSet k2 = superlevel(v, w, e, alpha + Rat(1, 40));
      CHECK(k2.subset_of(k));
    }
  }
}

TEST_CASE("lifting never lowers maximal values") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    int dim = 1 + t % 2;
    int n = dim == 1 ? 16 : 8;
    GridWeight w = random_weight(rng, dim, n);
    GridSet e = random_grid_set(rng, dim, n);
    auto coarse = grid_maximal(MaximalVariant::uncentered, w, e);
    auto fine = grid_maximal(MaximalVariant::uncentered, lift(w, 2), lift(e, 2));
    for (std::size_t c = 0; c < fine.size(); ++c) {
      std::size_t parent = dim == 1 ? c / 2 : (c / (2 * n) / 2) * n + (c % (2 * n)) / 2;
      CHECK(fine[c] >= coarse[parent] - 1e-12);
    }
  }
}

TEST_CASE("grid superlevel lies inside the exact halo") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    const int n = 16;
    GridSet e = random_grid_set(rng, 1, n);
    Rat alpha = make_rat(1 + t % 19, 20);
    GridSet k = superlevel(MaximalVariant::uncentered, GridWeight::lebesgue(1, n), e, alpha);
    std::vector<Interval> iv;
    for (auto c : e.indices()) iv.push_back({make_rat(long(c), n), make_rat(long(c) + 1, n)});
    IntervalSet halo = exact_halo_1d(IntervalSet(iv), alpha, nullptr);
    for (auto c : k.indices()) {
      CHECK(halo.contains(make_rat(long(c), n)));
      CHECK(halo.contains(make_rat(long(c) + 1, n)));
      CHECK(halo.contains(make_rat(2 * long(c) + 1, 2 * n)));
    }
  }
}
