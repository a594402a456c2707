#include <doctest.h>

#include <random>

#include "tauberian/covering.hpp"
#include "tauberian/errors.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

namespace {

Box iv(Rat lo, Rat hi) { return Box::from_corner({lo}, hi - lo); }

BoxFamily dec(std::vector<Box> b) { return BoxFamily(std::move(b), Ordering::decreasing_sidelength); }

std::vector<std::size_t> idx(std::initializer_list<std::size_t> l) { return l; }

}  // namespace

TEST_CASE("vitali") {
  auto r = vitali_select(dec({iv(0, 4), iv(3, 5), iv(10, 11)}));
  CHECK(r.selected == idx({0, 2}));
  CHECK(r.rejected == idx({1}));
  REQUIRE(r.certificates.size() == 1);
  CHECK(r.certificates[0].by == std::optional<std::size_t>(0));
  CHECK(verify_selection_contract(r).all_pass());

  auto disjoint = vitali_select(dec({iv(0, 1), iv(2, 3), iv(4, 5)}));
  CHECK(disjoint.selected.size() == 3);
  auto nested = vitali_select(dec({iv(0, 8), iv(1, 5), iv(2, 3)}));
  CHECK(nested.selected == idx({0}));
}

TEST_CASE("tampered vitali output fails the disjointness clause") {
  auto r = vitali_select(dec({iv(0, 4), iv(3, 5), iv(10, 11)}));
  r.selected = {0, 1, 2};
  r.rejected.clear();
  r.certificates.clear();
  auto c = verify_selection_contract(r);
  CHECK_FALSE(c.all_pass());
  bool found = false;
  for (const auto& cl : c.clauses)
    if (cl.name == "disjoint") {
      found = true;
      CHECK_FALSE(cl.pass);
      CHECK(cl.defect > 0);
    }
  CHECK(found);
}

TEST_CASE("cf lebesgue") {
  auto all = cf_select_lebesgue(dec({iv(0, 1), iv(2, 3)}), Rat(1, 2));
  CHECK(all.selected.size() == 2);
  auto dup = cf_select_lebesgue(dec({iv(0, 1), iv(0, 1)}), Rat(1, 4));
  CHECK(dup.selected == idx({0}));
  CHECK(dup.certificates[0].overlap_fraction == 1);
  auto r = cf_select_lebesgue(dec({iv(0, 1), iv(Rat(1, 2), Rat(3, 2)), iv(1, 2)}), Rat(3, 5));
  CHECK(r.selected == idx({0, 2}));
  CHECK(r.certificates[0].overlap_fraction == Rat(1, 2));
  CHECK(verify_selection_contract(r, Rat(3, 5)).all_pass());
  CHECK_THROWS_AS(cf_select_lebesgue(BoxFamily({iv(0, 1), iv(0, 4)}, Ordering::unordered), Rat(1, 2)), Error);
}

TEST_CASE("cf weighted") {
  WeightFamilySpec s;
  s.resolution = 8;
  GridWeight w = generate_weight(s);
  auto q = [](int lo, int hi) { return iv(make_rat(lo, 8), make_rat(hi, 8)); };
  auto disjoint = cf_select_weighted(dec({q(0, 2), q(4, 6)}), w, Rat(1, 2));
  CHECK(disjoint.selected.size() == 2);
  auto dup = cf_select_weighted(dec({q(0, 2), q(0, 2)}), w, Rat(1, 2));
  CHECK(dup.selected == idx({0}));
  CHECK_THROWS_AS(cf_select_weighted(dec({iv(Rat(1, 3), Rat(2, 3))}), w, Rat(1, 2)), Error);

  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    int dim = 1 + t % 2;
    int n = dim == 1 ? 16 : 8;
    WeightFamilySpec cs;
    cs.dim = dim;
    cs.resolution = n;
    GridWeight cw = generate_weight(cs);
    BoxFamily f = random_grid_family(rng, dim, n, 1 + t % 10);
    Rat xi = make_rat(1 + t % 7, 8);
    CHECK(cf_select_weighted(f, cw, xi).selected == cf_select_lebesgue(f, xi).selected);
  }
}

TEST_CASE("random selection contracts") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    auto f = random_decreasing_family(rng, 1 + t % 3, 1 + t % 10);
    auto v = vitali_select(f);
    CHECK(verify_selection_contract(v).all_pass());
    Rat d = make_rat(1 + t % 7, 8);
    auto c = cf_select_lebesgue(f, d);
    CHECK(verify_selection_contract(c, d).all_pass());
    CHECK(cf_select_lebesgue(f, d).selected == c.selected);
  }
}

TEST_CASE("satellite decomposition") {
  auto m = satellite_decompose(dec({iv(0, 4), iv(3, 5), iv(10, 11)}));
  REQUIRE(m.size() == 2);
  CHECK(m.at(0).size() == 2);
  CHECK(m.at(2).size() == 1);
  auto nested = satellite_decompose(dec({iv(0, 8), iv(1, 5), iv(2, 3)}));
  CHECK(nested.size() == 1);
  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    auto f = random_decreasing_family(rng, 1 + t % 2, 1 + t % 8);
    std::vector<Box> all;
    for (const auto& [c, fam] : satellite_decompose(f)) {
      CHECK(is_satellite(fam, 0));
      all.insert(all.end(), fam.boxes.begin(), fam.boxes.end());
    }
    CHECK(union_measure(all) == union_measure(f));
  }
}

TEST_CASE("overlap2") {
  CHECK(overlap2_select_1d({{Rat(0), Rat(1)}}) == idx({0}));
  std::vector<Interval> three{{Rat(0), Rat(2)}, {Rat(1), Rat(3)}, {Rat(2), Rat(4)}};
  CHECK(overlap2_select_1d(three) == idx({0, 2}));
  std::vector<Interval> copies(4, Interval{Rat(0), Rat(1)});
  CHECK(overlap2_select_1d(copies).size() == 1);
  std::mt19937_64 rng(53);
  for (int t = 0; t < 100; ++t) {
    auto ivs = random_intervals(rng, 1 + t % 12);
    CHECK(verify_overlap2(ivs, overlap2_select_1d(ivs)).all_pass());
  }
  CHECK_FALSE(verify_overlap2(three, {0}).all_pass());
}

TEST_CASE("kind names") {
  CHECK(parse_kind("cf-weighted") == SelectionKind::cf_weighted);
  CHECK_THROWS_AS(parse_kind("besicovitch"), Error);
}
