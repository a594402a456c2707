#include <doctest.h>

#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/geometry.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

namespace {

Box iv(long lo, long hi) { return Box::from_corner({Rat(lo)}, Rat(hi - lo)); }
Box sq(Rat x, Rat y, Rat s) { return Box::from_corner({x, y}, s); }

}  // namespace

TEST_CASE("dilate") {
  Box unit({Rat(1, 2)}, Rat(1));
  CHECK(dilate(unit, Rat(1)) == unit);
  Box d = dilate(unit, Rat(3, 2));
  CHECK(d.lo(0) == Rat(-1, 4));
  CHECK(d.hi(0) == Rat(5, 4));
  Box cube({Rat(0), Rat(0), Rat(0)}, Rat(1));
  CHECK(dilate(cube, Rat(5, 4)).volume() == Rat(125, 64));
  CHECK_THROWS_AS(dilate(unit, Rat(0)), Error);
}

TEST_CASE("dilate_set_about") {
  Box q({Rat(2)}, Rat(2));
  BoxRegion r = BoxRegion::from_box(iv(1, 4));
  BoxRegion img = dilate_set_about(q, r, Rat(3, 2));
  CHECK(img.measure() == Rat(9, 2));
  CHECK(symmetric_difference_measure(img, BoxRegion::from_box(Box::from_corner({Rat(1, 2)}, Rat(9, 2)))) == 0);
  Box b({Rat(1), Rat(1)}, Rat(2));
  CHECK(symmetric_difference_measure(dilate_set_about(b, BoxRegion::from_box(b), Rat(3)),
                                     BoxRegion::from_box(dilate(b, Rat(3)))) == 0);
  CHECK(dilate_set_about(b, BoxRegion(2), Rat(2)).measure() == 0);
}

TEST_CASE("union_measure") {
  std::vector<Box> two{sq(0, 0, 1), sq(5, 5, 1)};
  CHECK(union_measure(two) == 2);
  std::vector<Box> overlap{sq(0, 0, 1), sq(Rat(1, 2), Rat(1, 2), 1)};
  CHECK(union_measure(overlap) == Rat(7, 4));
  CHECK(union_measure(std::vector<Box>{}) == 0);
}

TEST_CASE("union_measure matches inclusion-exclusion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int dim = 1 + t % 3;
    auto boxes = random_boxes(rng, dim, 1 + t % 6);
    CHECK(union_measure(boxes) == union_measure_oracle(boxes));
  }
}

TEST_CASE("increments") {
  BoxFamily one({iv(0, 1)}, Ordering::decreasing_sidelength);
  CHECK(increments(one).size() == 1);
  BoxFamily f({iv(0, 2), iv(1, 3)}, Ordering::decreasing_sidelength);
  auto inc = increments(f);
  REQUIRE(inc.size() == 2);
  CHECK(symmetric_difference_measure(inc[0], BoxRegion::from_box(iv(0, 2))) == 0);
  CHECK(symmetric_difference_measure(inc[1], BoxRegion::from_box(iv(2, 3))) == 0);
  BoxFamily same({iv(0, 1), iv(0, 1)}, Ordering::decreasing_sidelength);
  CHECK(increments(same)[1].measure() == 0);
  BoxFamily bad({iv(0, 1), iv(0, 4)}, Ordering::unordered);
  CHECK_THROWS_AS(increments(bad), Error);
  CHECK_THROWS_AS(BoxFamily({iv(0, 1), iv(0, 4)}, Ordering::decreasing_sidelength), Error);
}

TEST_CASE("dilation identity") {
  BoxFamily one({Box({Rat(0), Rat(0)}, Rat(3))}, Ordering::decreasing_sidelength);
  CHECK(check_dilation_identity(one, Rat(1, 3)).holds);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto f = random_decreasing_family(rng, 1 + t % 3, 1 + t % 8);
    auto r = check_dilation_identity(f, Rat(1, 2));
    CHECK(r.holds);
    CHECK(r.defect == 0);
  }
  // Small box first: LHS is [-1,5], RHS is [-1/4,5/4] u [1/2,5] = [-1/4,5].
  BoxFamily bad({iv(0, 1), iv(0, 4)}, Ordering::unordered);
  auto r = check_dilation_identity(bad, Rat(1, 2));
  CHECK_FALSE(r.holds);
  CHECK(r.defect == Rat(3, 4));
  CHECK_FALSE(r.ordered);
}

TEST_CASE("enlargement_excess") {
  for (Rat d : {Rat(1, 8), Rat(1, 2)}) {
    BoxFamily unit({sq(0, 0, 1)}, Ordering::decreasing_sidelength);
    CHECK(enlargement_excess(unit, d) == pow(1 + d, 2) - 1);
    BoxFamily twice({sq(0, 0, 1), sq(0, 0, 1)}, Ordering::decreasing_sidelength);
    CHECK(enlargement_excess(twice, d) == enlargement_excess(unit, d));
  }
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto f = random_decreasing_family(rng, 2, 5);
    CHECK(enlargement_excess(f, Rat(1, 4)) <= (Rat(25, 16) - 1) * union_measure(f));
  }
  CHECK_THROWS_AS(enlargement_excess(BoxFamily({iv(0, 1)}, Ordering::unordered), Rat(1)), Error);
}

TEST_CASE("is_satellite") {
  BoxFamily yes({iv(0, 4), iv(3, 5)}, Ordering::unordered);
  CHECK(is_satellite(yes, 0));
  CHECK(within_triple_of(yes, 0));
  BoxFamily no({iv(0, 1), iv(5, 6)}, Ordering::unordered);
  CHECK_FALSE(is_satellite(no, 0));
  BoxFamily single({iv(0, 1)}, Ordering::unordered);
  CHECK(is_satellite(single, 0));
}
