#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "admiq/oracle.hpp"
#include "admiq/tree_matching.hpp"
#include "helpers.hpp"

using namespace admiq;
using namespace admiq::oracle;
using namespace admiq::testing;

namespace {

// Weight of a matching under the certificate realization, for soundness
// checks of the witnesses.
Rational matching_weight(const std::vector<std::size_t>& matching,
                         const std::vector<Rational>& weights) {
  Rational total = 0;
  for (std::size_t e : matching) total += weights[e];
  return total;
}

bool is_matching(const Graph& g, const std::vector<std::size_t>& edges) {
  std::set<int> used;
  for (std::size_t e : edges) {
    const auto& ep = g.edges[e];
    if (!used.insert(ep.u).second) return false;
    if (!used.insert(ep.v).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("maximum matching on the path fixture") {
  Instance p4 = p4_instance();
  const Graph& g = *p4.graph();

  SolveResult heavy = max_matching_tree(g, {2, 6, 2});
  CHECK(heavy.value == ExtendedWeight(Rational(6)));
  REQUIRE(heavy.solution.has_value());
  CHECK(*heavy.solution == std::vector<std::size_t>{1});

  SolveResult spread = max_matching_tree(g, {2, 3, 2});
  CHECK(spread.value == ExtendedWeight(Rational(4)));
  REQUIRE(spread.solution.has_value());
  CHECK(*spread.solution == std::vector<std::size_t>{0, 2});

  SolveResult forced = max_matching_tree(g, {2, 3, 2}, include_element(1));
  CHECK(forced.value == ExtendedWeight(Rational(3)));

  SolveResult banned = max_matching_tree(g, {2, 6, 2}, exclude_element(1));
  CHECK(banned.value == ExtendedWeight(Rational(4)));
}

TEST_CASE("max_matching_tree validates its inputs") {
  Instance tri = tri_instance();
  try {
    max_matching_tree(*tri.graph(), {1, 2, 3});
    FAIL("expected NotATree");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::NotATree);
  }

  Instance p4 = p4_instance();
  try {
    max_matching_tree(*p4.graph(), {1, 2});
    FAIL("expected InvalidRealization");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::InvalidRealization);
  }
  try {
    max_matching_tree(*p4.graph(), {1, 2, 3}, include_element(7));
    FAIL("expected UnknownElement");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::UnknownElement);
  }
}

TEST_CASE("fixed-edge thresholds on the path fixture") {
  Instance p4 = p4_instance();
  TreeMatchingThresholds t = tree_thresholds_fixed_edge(p4, 1);
  CHECK(t.include_threshold == Rational(2));
  CHECK(t.exclude_threshold == Rational(4));
  CHECK(t.min_convention.t_plus == ExtendedWeight(Rational(-4)));
  CHECK(t.min_convention.t_minus == ExtendedWeight(Rational(-2)));

  // The minimization mapping agrees with the brute-force oracle.
  Instance negated = negate_for_maximization(p4);
  ThresholdPair brute = oracle::brute_force_thresholds(negated, 1);
  CHECK(t.min_convention.t_plus == brute.t_plus);
  CHECK(t.min_convention.t_minus == brute.t_minus);
}

TEST_CASE("fixed-edge thresholds on a single edge and a star") {
  Instance single;
  single.elements = {"only"};
  single.intervals = {{1, 5}};
  single.costs = {1};
  TreeMatchingFamily fam;
  fam.graph.vertex_count = 2;
  fam.graph.edges = {{0, 1}};
  single.family = fam;
  single.objective = Objective::Max;
  single = validate_instance(std::move(single));
  TreeMatchingThresholds t = tree_thresholds_fixed_edge(single, 0);
  CHECK(t.include_threshold == Rational(0));
  CHECK(t.exclude_threshold == Rational(0));

  Instance star = star_instance();
  TreeMatchingThresholds s = tree_thresholds_fixed_edge(star, star.index_of("e"));
  CHECK(s.include_threshold == Rational(1));
  CHECK(s.exclude_threshold == Rational(1));
}

TEST_CASE("tree_thresholds_fixed_edge validates its inputs") {
  Instance p4 = p4_instance();
  try {
    tree_thresholds_fixed_edge(p4, 9);
    FAIL("expected EdgeNotInTree");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::EdgeNotInTree);
  }
  Instance min_form = negate_for_maximization(p4);
  try {
    tree_thresholds_fixed_edge(min_form, 1);
    FAIL("expected FamilyShapeMismatch");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::FamilyShapeMismatch);
  }
  Instance tri = tri_instance();
  Instance bad = tri;
  bad.objective = Objective::Max;
  bad = validate_instance(std::move(bad));
  try {
    tree_thresholds_fixed_edge(bad, 0);
    FAIL("expected FamilyShapeMismatch");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::FamilyShapeMismatch);
  }
}

TEST_CASE("certificates witness their thresholds") {
  std::mt19937 rng(777);
  for (int round = 0; round < 25; ++round) {
    Instance inst = random_tree_matching_instance(rng, 8);
    const Graph& g = *inst.graph();
    for (std::size_t e = 0; e < inst.size(); ++e) {
      TreeMatchingThresholds t = tree_thresholds_fixed_edge(inst, e);

      if (t.include_certificate) {
        const AlternatingPathCertificate& cert = *t.include_certificate;
        REQUIRE(cert.realization.size() == inst.size());
        CHECK(is_matching(g, cert.m_plus));
        CHECK(is_matching(g, cert.m_minus));
        // The fixed edge sits in m_plus and the alternation rule makes the
        // two matchings differ exactly on the path.
        CHECK(std::count(cert.m_plus.begin(), cert.m_plus.end(), e) == 1);
        CHECK(std::count(cert.m_minus.begin(), cert.m_minus.end(), e) == 0);
        std::set<std::size_t> diff;
        for (std::size_t x : cert.m_plus) diff.insert(x);
        for (std::size_t x : cert.m_minus) {
          if (!diff.insert(x).second) diff.erase(x);
        }
        CHECK(diff == std::set<std::size_t>(cert.path_edges.begin(),
                                            cert.path_edges.end()));
        // Both matchings are optimal on their side of the constraint under
        // the certificate realization, and their gap is the threshold.
        SolveResult with_e = max_matching_tree(g, cert.realization, include_element(e));
        SolveResult without_e = max_matching_tree(g, cert.realization, exclude_element(e));
        CHECK(with_e.value ==
              ExtendedWeight(matching_weight(cert.m_plus, cert.realization)));
        CHECK(without_e.value ==
              ExtendedWeight(matching_weight(cert.m_minus, cert.realization)));
        Rational gap = matching_weight(cert.m_minus, cert.realization) -
                       (matching_weight(cert.m_plus, cert.realization) -
                        cert.realization[e]);
        CHECK(gap == t.include_threshold);
      }

      if (t.exclude_certificate) {
        const AlternatingPathCertificate& cert = *t.exclude_certificate;
        CHECK(is_matching(g, cert.m_plus));
        CHECK(is_matching(g, cert.m_minus));
        SolveResult with_e = max_matching_tree(g, cert.realization, include_element(e));
        SolveResult without_e = max_matching_tree(g, cert.realization, exclude_element(e));
        CHECK(with_e.value ==
              ExtendedWeight(matching_weight(cert.m_plus, cert.realization)));
        CHECK(without_e.value ==
              ExtendedWeight(matching_weight(cert.m_minus, cert.realization)));
        Rational gap = matching_weight(cert.m_minus, cert.realization) -
                       (matching_weight(cert.m_plus, cert.realization) -
                        cert.realization[e]);
        CHECK(gap == t.exclude_threshold);
      }
    }
  }
}

TEST_CASE("tree thresholds equal brute force after the convention mapping") {
  std::mt19937 rng(321321);
  for (int round = 0; round < 30; ++round) {
    Instance inst = random_tree_matching_instance(rng, 9);
    Instance negated = negate_for_maximization(inst);
    for (std::size_t e = 0; e < inst.size(); ++e) {
      TreeMatchingThresholds t = tree_thresholds_fixed_edge(inst, e);
      ThresholdPair brute = oracle::brute_force_thresholds(negated, e);
      CAPTURE(round);
      CAPTURE(e);
      CHECK(t.min_convention.t_plus == brute.t_plus);
      CHECK(t.min_convention.t_minus == brute.t_minus);
    }
  }
}

TEST_CASE("alternating path sums obey the swap parity rule") {
  std::mt19937 rng(990);
  for (int round = 0; round < 15; ++round) {
    Instance inst = random_tree_matching_instance(rng, 7);
    const Graph& g = *inst.graph();
    for (std::size_t e = 0; e < inst.size(); ++e) {
      HangingSubtreeTables tables =
          hanging_subtree_tables(g, inst.intervals, e);
      // Walk each vertex toward the fixed edge; every ancestor pair is a
      // valid query whose swapped value obeys the parity rule.
      for (int start = 0; start < g.vertex_count; ++start) {
        int u = start;
        int steps = 0;
        while (tables.parent[u] >= 0 && steps < 3) {
          int v = tables.parent[u];
          Rational forward = alternating_path_sum(g, inst.intervals, e, start, v);
          Rational backward = alternating_path_sum(g, inst.intervals, e, v, start);
          const int length = steps + 1;
          if (length % 2 == 1) {
            CHECK(forward == backward);
          } else {
            CHECK(forward == -backward);
          }
          u = v;
          ++steps;
        }
        CHECK(alternating_path_sum(g, inst.intervals, e, start, start) == Rational(0));
      }
    }
  }
}

TEST_CASE("hanging subtree tables bound the root-free option") {
  std::mt19937 rng(2222);
  for (int round = 0; round < 15; ++round) {
    Instance inst = random_tree_matching_instance(rng, 8);
    const Graph& g = *inst.graph();
    for (std::size_t e = 0; e < inst.size(); ++e) {
      HangingSubtreeTables tables = hanging_subtree_tables(g, inst.intervals, e);
      REQUIRE(tables.best.size() == static_cast<std::size_t>(g.vertex_count));
      REQUIRE(tables.root_free.size() == static_cast<std::size_t>(g.vertex_count));
      CHECK(tables.parent[g.edges[e].u] == -1);
      CHECK(tables.parent[g.edges[e].v] == -1);
      CHECK(tables.parent_edge[g.edges[e].u] == kNoElement);
      for (int v = 0; v < g.vertex_count; ++v) {
        CHECK(tables.best[v] >= tables.root_free[v]);
        CHECK(tables.root_free[v] >= Rational(0));
      }
    }
  }
}
