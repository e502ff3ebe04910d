#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "admiq/rational.hpp"
#include "admiq/solve.hpp"
#include "admiq/types.hpp"

namespace admiq::mst {

struct RootedSpanningTree {
  int root = 0;
  std::vector<int> parent;               // -1 at the root
  std::vector<std::size_t> parent_edge;  // kNoElement at the root
  std::vector<int> depth;

  // The n-1 tree edge ids, ascending.
  std::vector<std::size_t> edge_ids() const;
  bool contains_edge(std::size_t edge) const;
};

// Minimum spanning tree rooted at vertex 0; ties broken by (weight, edge id).
RootedSpanningTree kruskal_mst(const Graph& g, const std::vector<Rational>& weights);

struct Replacement {
  std::size_t edge = kNoElement;
  // Endpoints of the replacement edge, oriented so that x lies on the same
  // side of the cut as the tree edge's stored first endpoint.
  int x = -1;
  int y = -1;
};

// Indexed by edge id; engaged exactly for non-bridge tree edges.
using ReplacementTable = std::vector<std::optional<Replacement>>;

// For every tree edge, the cheapest non-tree edge reconnecting the two
// components of T minus that edge (ties by id); bridges stay empty.
ReplacementTable replacements_all(const Graph& g, const std::vector<Rational>& weights,
                                  const RootedSpanningTree& tree);

// Maximum edge weight on the unique tree path of each queried vertex pair.
std::vector<Rational> tree_path_bottlenecks(const RootedSpanningTree& tree,
                                            const std::vector<Rational>& weights,
                                            const std::vector<std::pair<int, int>>& pairs);

// For each edge uv, the smallest bottleneck over u-v paths other than the
// edge itself; +inf exactly for bridges. Indexed by edge id.
std::vector<ExtendedWeight> nontrivial_bottlenecks_all(const Graph& g,
                                                       const std::vector<Rational>& weights);

// Threshold pair per edge of an Mst instance: the lower-end bottleneck run
// gives t_plus, the upper-end run gives t_minus. Indexed by element.
std::vector<ThresholdPair> mst_thresholds(const Instance& inst);

// Independent cross-check: merge the edges of G minus the given edge in
// ascending weight order and report the weight at which its endpoints first
// meet; +inf when they never do.
ExtendedWeight bottleneck_single_check(const Graph& g, const std::vector<Rational>& weights,
                                       std::size_t element);

}  // namespace admiq::mst
