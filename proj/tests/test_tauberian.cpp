#include <doctest.h>

#include "tauberian/errors.hpp"
#include "tauberian/tauberian.hpp"

using namespace tlab;

namespace {

TauberianQuery grid_query(Rat alpha, int n, Strategy s) {
  TauberianQuery q;
  q.alpha = alpha;
  q.resolution = n;
  q.strategy = s;
  q.seed = 3;
  return q;
}

GridWeight constant(int dim, int n) {
  WeightFamilySpec s;
  s.dim = dim;
  s.resolution = n;
  return generate_weight(s);
}

}  // namespace

TEST_CASE("exhaustive search on a tiny grid") {
  auto q = grid_query(Rat(2, 5), 8, Strategy::exhaustive);
  auto est = estimate_tauberian(q);
  CHECK(est.value >= 3);
  CHECK(est.value <= 4);
  REQUIRE(est.grid_witness);
  CHECK(evaluate_candidate(q, nullptr, *est.grid_witness) == est.value);
  REQUIRE(est.upper_reference);
  CHECK(*est.upper_reference == 4);
  q.resolution = 32;
  CHECK_THROWS_AS(estimate_tauberian(q), Error);
}

TEST_CASE("exact engine reaches the sharp value") {
  TauberianQuery q;
  q.engine = Engine::exact_1d;
  q.alpha = Rat(1, 2);
  q.resolution = 16;
  auto est = estimate_tauberian(q);
  CHECK(est.value == 3);
  REQUIRE(est.interval_witness);
  CHECK(est.interval_witness->intervals().size() == 1);
}

TEST_CASE("full domain has ratio one") {
  for (Rat a : {Rat(1, 10), Rat(1, 2), Rat(9, 10)}) {
    auto q = grid_query(a, 16, Strategy::structured);
    CHECK(evaluate_candidate(q, nullptr, GridSet::full(1, 16)) == 1);
    CHECK(estimate_tauberian(q).value >= 1);
  }
}

TEST_CASE("exact one-dimensional constant") {
  CHECK(exact_tauberian_1d(Rat(1, 2)).value == 3);
  CHECK(exact_tauberian_1d(Rat(3, 4)).value == Rat(5, 3));
  CHECK(exact_tauberian_1d(Rat(99, 100)).value == Rat(101, 99));
  for (Rat a : {Rat(1, 2), Rat(2, 3), Rat(3, 4), Rat(9, 10)}) {
    auto r = exact_tauberian_1d(a);
    CHECK(r.attained == r.value);
  }
  CHECK_THROWS_AS(exact_tauberian_1d(Rat(1)), Error);
}

TEST_CASE("curves") {
  TauberianQuery q;
  q.engine = Engine::exact_1d;
  q.resolution = 16;
  auto c = tauberian_curve(q, {Rat(9, 10), Rat(19, 20), Rat(99, 100)});
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[0].estimate.value == Rat(11, 9));
  CHECK(c.points[1].estimate.value == Rat(21, 19));
  CHECK(c.points[2].estimate.value == Rat(101, 99));
  CHECK_THROWS_AS(tauberian_curve(q, {Rat(1, 2), Rat(1, 3)}), Error);

  auto g = grid_query(Rat(1, 2), 32, Strategy::structured);
  GridWeight w = constant(1, 32);
  std::vector<Rat> as{Rat(1, 2), Rat(3, 4), Rat(9, 10)};
  auto leb = tauberian_curve(g, as);
  for (Setting s : {Setting::weighted_ambient, Setting::weighted_operator}) {
    g.setting = s;
    auto wc = tauberian_curve(g, as, &w);
    for (std::size_t i = 0; i < as.size(); ++i) {
      CHECK(wc.points[i].estimate.value == leb.points[i].estimate.value);
      CHECK(wc.points[i].estimate.value >= 1);
    }
  }
}

TEST_CASE("grid estimates stay below the exact value and grow with N") {
  for (Rat a : {Rat(1, 3), Rat(1, 2), Rat(4, 5)}) {
    Rat prev = 0;
    for (int n : {8, 16, 32}) {
      auto est = estimate_tauberian(grid_query(a, n, Strategy::structured));
      CHECK(est.value <= (2 - a) / a);
      CHECK(est.value >= prev);
      prev = est.value;
    }
  }
}

TEST_CASE("search dominance on tiny grids") {
  for (Rat a : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
    auto ex = estimate_tauberian(grid_query(a, 10, Strategy::exhaustive));
    auto st = estimate_tauberian(grid_query(a, 10, Strategy::structured));
    auto ls = estimate_tauberian(grid_query(a, 10, Strategy::local_search));
    CHECK(ex.value >= st.value);
    CHECK(st.value >= 1);
    CHECK(ex.value >= ls.value);
  }
  auto q = grid_query(Rat(1, 2), 16, Strategy::local_search);
  q.seed.reset();
  CHECK_THROWS_AS(estimate_tauberian(q), Error);
}

TEST_CASE("local search is deterministic given the seed") {
  GridWeight w = generate_weight({WeightFamily::log_smooth_random, 1, 32, 0, {}, 2, 4, 9, 2, 1});
  auto q = grid_query(Rat(3, 4), 32, Strategy::structured_local_search);
  q.setting = Setting::weighted_ambient;
  q.budget = 4000;
  auto a = estimate_tauberian(q, &w), b = estimate_tauberian(q, &w);
  CHECK(a.value == b.value);
  CHECK(*a.grid_witness == *b.grid_witness);
  CHECK(evaluate_candidate(q, &w, *a.grid_witness) == a.value);
}

TEST_CASE("weighted settings need a weight") {
  auto q = grid_query(Rat(1, 2), 16, Strategy::structured);
  q.setting = Setting::weighted_operator;
  CHECK_THROWS_AS(estimate_tauberian(q), Error);
}

TEST_CASE("counterexample demo") {
  auto r = counterexample_demo(1000, Rat(9, 10), 3);
  Rat h = 1;
  for (long j = 10; j <= 1000; ++j) h += make_rat(1, j);
  CHECK(r.lower_bound == h);
  CHECK(to_double(r.lower_bound) == doctest::Approx(5.657).epsilon(1e-3));
  REQUIRE(r.growth_table.size() == 4);
  for (std::size_t i = 1; i < r.growth_table.size(); ++i) {
    double step = to_double(r.growth_table[i].bound - r.growth_table[i - 1].bound);
    CHECK(step == doctest::Approx(0.693).epsilon(0.01));
  }
  auto none = counterexample_demo(10, Rat(19, 20), 0);
  CHECK(none.lower_bound == 1);
  CHECK(none.halo_beyond_e_empty);
}
