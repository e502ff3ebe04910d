#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "admiq/types.hpp"

// Fixture builders shared by the test binaries. Random generators take the
// engine by reference so each test controls its own fixed seed.
namespace admiq::testing {

// Triangle, Mst, Min: a=(0,1) [1,1], b=(1,2) [2,4], c=(0,2) [3,5], costs 1.
inline Instance tri_instance() {
  Instance inst;
  inst.elements = {"a", "b", "c"};
  inst.intervals = {{1, 1}, {2, 4}, {3, 5}};
  inst.costs = {1, 1, 1};
  MstFamily fam;
  fam.graph.vertex_count = 3;
  fam.graph.edges = {{0, 1}, {1, 2}, {0, 2}};
  inst.family = std::move(fam);
  inst.objective = Objective::Min;
  return validate_instance(std::move(inst));
}

// Path on 4 vertices, TreeMatching, Max: e1 [1,2], e2 [2,6], e3 [1,2].
inline Instance p4_instance() {
  Instance inst;
  inst.elements = {"e1", "e2", "e3"};
  inst.intervals = {{1, 2}, {2, 6}, {1, 2}};
  inst.costs = {1, 1, 1};
  TreeMatchingFamily fam;
  fam.graph.vertex_count = 4;
  fam.graph.edges = {{0, 1}, {1, 2}, {2, 3}};
  inst.family = std::move(fam);
  inst.objective = Objective::Max;
  return validate_instance(std::move(inst));
}

// Star with three legs, TreeMatching, Max: f [1,1], g [1,1], e [0,3].
inline Instance star_instance() {
  Instance inst;
  inst.elements = {"f", "g", "e"};
  inst.intervals = {{1, 1}, {1, 1}, {0, 3}};
  inst.costs = {1, 1, 1};
  TreeMatchingFamily fam;
  fam.graph.vertex_count = 4;
  fam.graph.edges = {{0, 1}, {0, 2}, {0, 3}};
  inst.family = std::move(fam);
  inst.objective = Objective::Max;
  return validate_instance(std::move(inst));
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Integer endpoints drawn from [lo_min, hi_max] with lo <= hi.
inline UncertaintyInterval random_interval(std::mt19937& rng, int lo_min, int hi_max) {
  int a = uniform_int(rng, lo_min, hi_max);
  int b = uniform_int(rng, lo_min, hi_max);
  if (a > b) std::swap(a, b);
  return {a, b};
}

// Connected multigraph: a random spanning tree plus random extra edges,
// parallel edges allowed. Element ids e0, e1, ...
inline Graph random_connected_multigraph(std::mt19937& rng, int min_n, int max_n,
                                         int max_m) {
  Graph g;
  g.vertex_count = uniform_int(rng, min_n, max_n);
  for (int i = 1; i < g.vertex_count; ++i) {
    g.edges.push_back({uniform_int(rng, 0, i - 1), i});
  }
  const int m = uniform_int(rng, g.vertex_count - 1, max_m);
  while (static_cast<int>(g.edges.size()) < m) {
    int u = uniform_int(rng, 0, g.vertex_count - 1);
    int v = uniform_int(rng, 0, g.vertex_count - 1);
    if (u == v) continue;
    g.edges.push_back({u, v});
  }
  std::shuffle(g.edges.begin(), g.edges.end(), rng);
  return g;
}

inline Instance instance_over_graph(Graph g, FamilyDescriptor family,
                                    std::mt19937& rng, int lo_min, int hi_max,
                                    bool random_costs = false) {
  Instance inst;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    inst.elements.push_back("e" + std::to_string(i));
    inst.intervals.push_back(random_interval(rng, lo_min, hi_max));
    inst.costs.push_back(random_costs ? Rational(uniform_int(rng, 0, 3)) : Rational(1));
  }
  inst.family = std::move(family);
  inst.objective = Objective::Min;
  return validate_instance(std::move(inst));
}

inline Instance random_mst_instance(std::mt19937& rng, int min_n, int max_n,
                                    int max_m, bool random_costs = false) {
  Graph g = random_connected_multigraph(rng, min_n, max_n, max_m);
  MstFamily fam;
  fam.graph = g;
  return instance_over_graph(std::move(g), std::move(fam), rng, 0, 9, random_costs);
}

inline Instance random_graphic_instance(std::mt19937& rng, int min_n, int max_n,
                                        int max_m) {
  Graph g = random_connected_multigraph(rng, min_n, max_n, max_m);
  GraphicMatroidFamily fam;
  fam.graph = g;
  return instance_over_graph(std::move(g), std::move(fam), rng, 0, 9);
}

// Random tree on 2..max_edges+1 vertices, Max objective.
inline Instance random_tree_matching_instance(std::mt19937& rng, int max_edges) {
  Graph g;
  g.vertex_count = uniform_int(rng, 2, max_edges + 1);
  for (int i = 1; i < g.vertex_count; ++i) {
    g.edges.push_back({uniform_int(rng, 0, i - 1), i});
  }
  std::shuffle(g.edges.begin(), g.edges.end(), rng);
  Instance inst;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    inst.elements.push_back("e" + std::to_string(i));
    inst.intervals.push_back(random_interval(rng, 0, 9));
    inst.costs.push_back(1);
  }
  TreeMatchingFamily fam;
  fam.graph = std::move(g);
  inst.family = std::move(fam);
  inst.objective = Objective::Max;
  return validate_instance(std::move(inst));
}

// Uniform matroid on n elements; intervals in [0, hi_max], at most
// max_nontrivial of them non-trivial (the rest collapse to their low end).
inline Instance random_uniform_instance(std::mt19937& rng, int n, int rank,
                                        int hi_max, int max_nontrivial) {
  Instance inst;
  int nontrivial = 0;
  for (int i = 0; i < n; ++i) {
    inst.elements.push_back("e" + std::to_string(i));
    UncertaintyInterval iv = random_interval(rng, 0, hi_max);
    if (iv.lo != iv.hi && ++nontrivial > max_nontrivial) iv.hi = iv.lo;
    inst.intervals.push_back(iv);
    inst.costs.push_back(1);
  }
  UniformMatroidFamily fam;
  fam.rank = rank;
  fam.size = n;
  inst.family = std::move(fam);
  inst.objective = Objective::Min;
  return validate_instance(std::move(inst));
}

inline Rational solution_weight(const std::vector<std::size_t>& solution,
                                const std::vector<Rational>& weights) {
  Rational total = 0;
  for (std::size_t i : solution) total += weights[i];
  return total;
}

}  // namespace admiq::testing
