#include <doctest.h>

#include <random>

#include "tauberian/errors.hpp"
#include "tauberian/io.hpp"
#include "tauberian/verify.hpp"

using namespace tlab;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("box families round trip exactly") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    auto f = random_decreasing_family(rng, 1 + t % 3, 1 + t % 6);
    Json j = Json::parse(to_json(f).dump());
    BoxFamily g = box_family_from_json(j);
    CHECK(g.boxes == f.boxes);
    CHECK(g.ordering == f.ordering);
  }
  Json j = Json::parse(R"({"dim": 1, "boxes": [{"center": ["1/3"], "side": "2/7"}]})");
  CHECK(box_family_from_json(j).boxes[0].side() == Rat(2, 7));
}

TEST_CASE("malformed documents name the location") {
  Json bad = Json::parse(R"({"dim": 1, "boxes": [{"center": ["1/3"], "side": "x"}]})");
  try {
    box_family_from_json(bad);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("$.boxes[0].side") != std::string::npos);
  }
  CHECK(code_of([] { box_family_from_json(Json::parse(R"({"boxes": []})")); }) == Errc::parse_error);
  CHECK(code_of([] { weight_from_json(Json::parse(R"({"dim": 1, "resolution": 2, "values": ["1"]})")); }) ==
        Errc::parse_error);
  CHECK(code_of([] { grid_set_from_json(Json::parse(R"({"dim": 1, "resolution": 2, "cells": [5]})")); }) ==
        Errc::parse_error);
  CHECK(code_of([] { box_family_from_json(Json::parse(R"({"format_version": 2, "dim": 1, "boxes": []})")); }) ==
        Errc::parse_error);
}

TEST_CASE("weights round trip") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 10; ++t) {
    GridWeight w = random_weight(rng, 1 + t % 2, 8);
    GridWeight v = weight_from_json(Json::parse(to_json(w).dump()));
    CHECK(v.values() == w.values());
    CHECK(v.meta().family == w.meta().family);
  }
}

TEST_CASE("interval sets, grid sets and selections round trip") {
  IntervalSet s({{Rat(-1, 3), Rat(1, 2)}, {Rat(2), Rat(7, 3)}});
  CHECK(interval_set_from_json(Json::parse(to_json(s).dump())) == s);
  GridSet e = GridSet::from_indices(2, 4, {1, 5, 15});
  CHECK(grid_set_from_json(Json::parse(to_json(e).dump())) == e);

  std::mt19937_64 rng(71);
  auto f = random_decreasing_family(rng, 2, 8);
  auto r = cf_select_lebesgue(f, Rat(1, 2));
  auto back = selection_from_json(Json::parse(to_json(r).dump()));
  CHECK(back.selected == r.selected);
  CHECK(back.rejected == r.rejected);
  CHECK(back.input.boxes == r.input.boxes);
  CHECK(verify_selection_contract(back, Rat(1, 2)).all_pass());
}

TEST_CASE("csv layouts") {
  TauberianQuery q;
  q.engine = Engine::exact_1d;
  auto c = tauberian_curve(q, {Rat(1, 2)});
  CHECK(curve_csv(c) == "alpha,value,witness_size,strategy,engine\n1/2,3,1,structured,exact-1d\n");
  ConsistencyReport r;
  CHECK(report_csv(r).rfind("weight_id,a_infty_fw,hruscev,doubling,rh_eps,gamma,solyanik_c,solyanik_K,converse_bound,p0,c_n_used\n", 0) == 0);
}

TEST_CASE("corpus documents") {
  Json j = Json::parse(R"({"format_version": 1, "weights": [
    {"id": "flat", "generate": {"family": "constant", "resolution": 8}},
    {"id": "x2", "generate": {"family": "power", "exponent": 2, "resolution": 8}}]})");
  auto c = corpus_from_json(j);
  REQUIRE(c.size() == 2);
  CHECK(c[1].id == "x2");
  CHECK(c[1].weight.resolution() == 8);
  Json bad = Json::parse(R"({"weights": [{"id": "q", "generate": {"family": "wavy"}}]})");
  CHECK(code_of([&] { corpus_from_json(bad); }) == Errc::parse_error);
}

TEST_CASE("verify-lemmas reports") {
  auto empty = verify_lemmas("all", 0, 1);
  CHECK(empty.pass());
  CHECK_FALSE(empty.warnings.empty());
  auto geo = verify_lemmas("geometry", 20, 1);
  CHECK(geo.pass());
  CHECK(to_json(geo).dump() == to_json(verify_lemmas("geometry", 20, 1)).dump());
  CHECK_THROWS_AS(verify_lemmas("topology", 1, 1), Error);
}
