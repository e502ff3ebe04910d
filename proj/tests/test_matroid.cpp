#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "admiq/matroid.hpp"
#include "admiq/mst.hpp"
#include "admiq/oracle.hpp"
#include "helpers.hpp"

using namespace admiq;
using namespace admiq::oracle;
using namespace admiq::testing;

namespace {

Instance uniform_fixture() {
  Instance inst;
  inst.elements = {"a", "b", "c"};
  inst.intervals = {{1, 1}, {2, 4}, {3, 5}};
  inst.costs = {1, 1, 1};
  UniformMatroidFamily fam;
  fam.rank = 2;
  fam.size = 3;
  inst.family = fam;
  inst.objective = Objective::Min;
  return validate_instance(std::move(inst));
}

}  // namespace

TEST_CASE("independence predicates behave as expected") {
  matroid::IndependenceOracle uni = matroid::uniform_oracle(2, 4);
  CHECK(uni.ground_size == 4);
  CHECK(uni.is_independent({0, 0, 0, 0}));
  CHECK(uni.is_independent({1, 0, 1, 0}));
  CHECK(!uni.is_independent({1, 1, 1, 0}));

  Instance tri = tri_instance();
  matroid::IndependenceOracle gra = matroid::graphic_oracle(*tri.graph());
  CHECK(gra.is_independent({1, 1, 0}));
  CHECK(gra.is_independent({0, 1, 1}));
  CHECK(!gra.is_independent({1, 1, 1}));  // the triangle is a cycle
}

TEST_CASE("greedy minimum basis with constraints") {
  Instance tri = tri_instance();
  matroid::IndependenceOracle oracle = matroid::graphic_oracle(*tri.graph());
  std::vector<Rational> w = {1, 2, 3};

  SolveResult free_run = matroid::greedy_min_basis(oracle, w, free_constraint());
  CHECK(free_run.value == ExtendedWeight(Rational(3)));
  REQUIRE(free_run.solution.has_value());
  CHECK(*free_run.solution == std::vector<std::size_t>{0, 1});

  SolveResult avoid_a = matroid::greedy_min_basis(oracle, w, exclude_element(0));
  CHECK(avoid_a.value == ExtendedWeight(Rational(5)));
  REQUIRE(avoid_a.solution.has_value());
  CHECK(*avoid_a.solution == std::vector<std::size_t>{1, 2});

  SolveResult with_c = matroid::greedy_min_basis(oracle, w, include_element(2));
  CHECK(with_c.value == ExtendedWeight(Rational(4)));

  SUBCASE("excluding a coloop is infeasible") {
    Graph path;
    path.vertex_count = 3;
    path.edges = {{0, 1}, {1, 2}};
    matroid::IndependenceOracle o = matroid::graphic_oracle(path);
    SolveResult res = matroid::greedy_min_basis(o, {1, 1}, exclude_element(0));
    CHECK(res.value.is_plus_infinity());
    CHECK(!res.solution.has_value());
  }

  SUBCASE("including a loop fails") {
    // A uniform matroid of rank 0 makes every element a loop.
    matroid::IndependenceOracle o = matroid::uniform_oracle(0, 2);
    try {
      matroid::greedy_min_basis(o, {1, 1}, include_element(0));
      FAIL("expected NotIndependentSingleton");
    } catch (const Error& error) {
      CHECK(error.code() == ErrorCode::NotIndependentSingleton);
    }
  }
}

TEST_CASE("uniform matroid thresholds match the rank selection rule") {
  Instance inst = uniform_fixture();
  auto pairs = matroid::matroid_thresholds_all(inst);
  REQUIRE(pairs.size() == 3);
  // c competes with the second-smallest among {1, w_b}.
  CHECK(pairs[2].t_plus == ExtendedWeight(Rational(2)));
  CHECK(pairs[2].t_minus == ExtendedWeight(Rational(4)));
  for (std::size_t e = 0; e < inst.size(); ++e) {
    ThresholdPair brute = oracle::brute_force_thresholds(inst, e);
    CHECK(pairs[e].t_plus == brute.t_plus);
    CHECK(pairs[e].t_minus == brute.t_minus);
  }
}

TEST_CASE("loops and coloops get infinite thresholds") {
  Instance all_loops;
  all_loops.elements = {"x", "y"};
  all_loops.intervals = {{0, 1}, {2, 3}};
  all_loops.costs = {1, 1};
  UniformMatroidFamily loops;
  loops.rank = 0;
  loops.size = 2;
  all_loops.family = loops;
  all_loops.objective = Objective::Min;
  all_loops = validate_instance(std::move(all_loops));
  for (const auto& pair : matroid::matroid_thresholds_all(all_loops)) {
    CHECK(pair.t_plus.is_minus_infinity());
    CHECK(pair.t_minus.is_minus_infinity());
  }

  Instance all_coloops = all_loops;
  UniformMatroidFamily full;
  full.rank = 2;
  full.size = 2;
  all_coloops.family = full;
  all_coloops = validate_instance(std::move(all_coloops));
  for (const auto& pair : matroid::matroid_thresholds_all(all_coloops)) {
    CHECK(pair.t_plus.is_plus_infinity());
    CHECK(pair.t_minus.is_plus_infinity());
  }
}

TEST_CASE("uniform thresholds equal brute force across sizes and ranks") {
  std::mt19937 rng(1729);
  for (int n = 1; n <= 10; ++n) {
    for (int rank = 0; rank <= n; ++rank) {
      Instance inst = random_uniform_instance(rng, n, rank, 6, 8);
      auto fast = matroid::matroid_thresholds_all(inst);
      for (std::size_t e = 0; e < inst.size(); ++e) {
        ThresholdPair brute = oracle::brute_force_thresholds(inst, e);
        CAPTURE(n);
        CAPTURE(rank);
        CAPTURE(e);
        CHECK(fast[e].t_plus == brute.t_plus);
        CHECK(fast[e].t_minus == brute.t_minus);
      }
    }
  }
}

TEST_CASE("graphic matroid thresholds coincide with spanning tree thresholds") {
  std::mt19937 rng(40425);
  for (int round = 0; round < 25; ++round) {
    Instance graphic = random_graphic_instance(rng, 3, 6, 9);
    Instance same_graph = graphic;
    MstFamily fam;
    fam.graph = *graphic.graph();
    same_graph.family = fam;
    same_graph = validate_instance(std::move(same_graph));

    auto fast = matroid::matroid_thresholds_all(graphic);
    auto tree = mst::mst_thresholds(same_graph);
    for (std::size_t e = 0; e < graphic.size(); ++e) {
      CHECK(fast[e].t_plus == tree[e].t_plus);
      CHECK(fast[e].t_minus == tree[e].t_minus);
      ThresholdPair brute = oracle::brute_force_thresholds(graphic, e);
      CHECK(fast[e].t_plus == brute.t_plus);
      CHECK(fast[e].t_minus == brute.t_minus);
    }
  }
}

TEST_CASE("graphic exclusion matches the spanning tree oracle") {
  Instance tri = tri_instance();
  Instance graphic = tri;
  GraphicMatroidFamily fam;
  fam.graph = *tri.graph();
  graphic.family = fam;
  graphic = validate_instance(std::move(graphic));

  matroid::IndependenceOracle oracle = matroid::graphic_oracle(*graphic.graph());
  SolveResult res = matroid::greedy_min_basis(oracle, {1, 2, 3}, exclude_element(0));
  REQUIRE(res.solution.has_value());
  CHECK(*res.solution == std::vector<std::size_t>{1, 2});
}
