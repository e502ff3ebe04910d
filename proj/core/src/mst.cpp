#include "admiq/mst.hpp"

#include <algorithm>
#include <numeric>

#include "admiq/errors.hpp"

namespace admiq::mst {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<std::size_t> edges_by_weight(const Graph& g,
                                         const std::vector<Rational>& w) {
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w[a] != w[b]) return w[a] < w[b];
    return a < b;
  });
  return order;
}

// Depth, parent links, and Euler visit intervals of the rooted tree, plus
// binary-lifting tables carrying the path maximum toward the root.
struct TreeIndex {
  const RootedSpanningTree& tree;
  std::vector<int> tin, tout;
  int levels = 1;
  std::vector<std::vector<int>> up;
  std::vector<std::vector<Rational>> up_max;

  TreeIndex(const Graph& g, const RootedSpanningTree& t,
            const std::vector<Rational>& w)
      : tree(t) {
    const int n = g.vertex_count;
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v) {
      if (t.parent[v] >= 0) children[t.parent[v]].push_back(v);
    }
    tin.assign(n, -1);
    tout.assign(n, -1);
    int clock = 0;
    std::vector<std::pair<int, bool>> stack{{t.root, false}};
    while (!stack.empty()) {
      auto [v, done] = stack.back();
      stack.pop_back();
      if (done) {
        tout[v] = clock++;
        continue;
      }
      tin[v] = clock++;
      stack.push_back({v, true});
      for (int c : children[v]) stack.push_back({c, false});
    }
    while ((1 << levels) < n) ++levels;
    up.assign(levels, std::vector<int>(n, t.root));
    up_max.assign(levels, std::vector<Rational>(n));
    for (int v = 0; v < n; ++v) {
      up[0][v] = t.parent[v] >= 0 ? t.parent[v] : v;
      up_max[0][v] = t.parent[v] >= 0 ? w[t.parent_edge[v]] : Rational(0);
    }
    for (int k = 1; k < levels; ++k) {
      for (int v = 0; v < n; ++v) {
        int mid = up[k - 1][v];
        up[k][v] = up[k - 1][mid];
        up_max[k][v] = std::max(up_max[k - 1][v], up_max[k - 1][mid]);
      }
    }
  }

  bool is_ancestor(int a, int d) const {
    return tin[a] <= tin[d] && tout[d] <= tout[a];
  }

  // Max edge weight from v up to (excluding) its ancestor a.
  Rational climb_max(int v, int a) const {
    Rational best(0);
    bool any = false;
    int steps = tree.depth[v] - tree.depth[a];
    for (int k = 0; steps > 0; ++k, steps >>= 1) {
      if (steps & 1) {
        best = any ? std::max(best, up_max[k][v]) : up_max[k][v];
        any = true;
        v = up[k][v];
      }
    }
    return best;
  }

  int lca(int u, int v) const {
    if (is_ancestor(u, v)) return u;
    if (is_ancestor(v, u)) return v;
    for (int k = levels - 1; k >= 0; --k) {
      if (!is_ancestor(up[k][u], v)) u = up[k][u];
    }
    return up[0][u];
  }

  Rational path_max(int u, int v) const {
    int a = lca(u, v);
    if (u == v) return Rational(0);
    if (a == u) return climb_max(v, a);
    if (a == v) return climb_max(u, a);
    return std::max(climb_max(u, a), climb_max(v, a));
  }
};

}  // namespace

std::vector<std::size_t> RootedSpanningTree::edge_ids() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] >= 0) out.push_back(parent_edge[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool RootedSpanningTree::contains_edge(std::size_t edge) const {
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] >= 0 && parent_edge[v] == edge) return true;
  }
  return false;
}

RootedSpanningTree kruskal_mst(const Graph& g, const std::vector<Rational>& weights) {
  if (weights.size() != g.edges.size()) {
    fail(ErrorCode::InvalidRealization, "expected one weight per edge");
  }
  UnionFind uf(g.vertex_count);
  std::vector<std::size_t> picked;
  for (std::size_t idx : edges_by_weight(g, weights)) {
    if (uf.unite(g.edges[idx].u, g.edges[idx].v)) picked.push_back(idx);
  }
  if (static_cast<int>(picked.size()) != g.vertex_count - 1) {
    fail(ErrorCode::Disconnected, "the graph has no spanning tree");
  }
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(g.vertex_count);
  for (std::size_t idx : picked) {
    adj[g.edges[idx].u].push_back({idx, g.edges[idx].v});
    adj[g.edges[idx].v].push_back({idx, g.edges[idx].u});
  }
  RootedSpanningTree t;
  t.root = 0;
  t.parent.assign(g.vertex_count, -1);
  t.parent_edge.assign(g.vertex_count, kNoElement);
  t.depth.assign(g.vertex_count, 0);
  std::vector<int> stack{t.root};
  std::vector<char> seen(g.vertex_count, 0);
  seen[t.root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [edge, to] : adj[v]) {
      if (seen[to]) continue;
      seen[to] = 1;
      t.parent[to] = v;
      t.parent_edge[to] = edge;
      t.depth[to] = t.depth[v] + 1;
      stack.push_back(to);
    }
  }
  return t;
}

ReplacementTable replacements_all(const Graph& g, const std::vector<Rational>& weights,
                                  const RootedSpanningTree& tree) {
  TreeIndex index(g, tree, weights);
  std::vector<char> in_tree(g.edges.size(), 0);
  for (std::size_t v = 0; v < tree.parent.size(); ++v) {
    if (tree.parent[v] >= 0) in_tree[tree.parent_edge[v]] = 1;
  }
  std::vector<std::size_t> nontree;
  for (std::size_t idx : edges_by_weight(g, weights)) {
    if (!in_tree[idx]) nontree.push_back(idx);
  }

  // Ascending sweep: each tree edge is claimed by the first non-tree edge
  // whose tree path covers it. jump[] skips already-claimed edges.
  std::vector<int> jump(g.vertex_count);
  std::iota(jump.begin(), jump.end(), 0);
  auto find = [&](int v) {
    while (jump[v] != v) {
      jump[v] = jump[jump[v]];
      v = jump[v];
    }
    return v;
  };

  ReplacementTable table(g.edges.size());
  for (std::size_t f : nontree) {
    int a = find(g.edges[f].u);
    int b = find(g.edges[f].v);
    while (a != b) {
      if (tree.depth[a] < tree.depth[b]) std::swap(a, b);
      // a is the deeper endpoint: claim the edge above a.
      std::size_t e = tree.parent_edge[a];
      int inside = index.is_ancestor(a, g.edges[f].u) ? g.edges[f].u : g.edges[f].v;
      int outside = inside == g.edges[f].u ? g.edges[f].v : g.edges[f].u;
      Replacement r;
      r.edge = f;
      if (g.edges[e].u == a) {
        r.x = inside;
        r.y = outside;
      } else {
        r.x = outside;
        r.y = inside;
      }
      table[e] = r;
      jump[a] = tree.parent[a];
      a = find(tree.parent[a]);
    }
  }
  return table;
}

std::vector<Rational> tree_path_bottlenecks(const RootedSpanningTree& tree,
                                            const std::vector<Rational>& weights,
                                            const std::vector<std::pair<int, int>>& pairs) {
  const int n = static_cast<int>(tree.parent.size());
  Graph shell;
  shell.vertex_count = n;
  shell.edges.resize(weights.size());
  TreeIndex index(shell, tree, weights);
  std::vector<Rational> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      fail(ErrorCode::UnknownVertex, "pair endpoint out of range");
    }
    if (u == v) {
      fail(ErrorCode::SameVertex, "tree path endpoints coincide");
    }
    out.push_back(index.path_max(u, v));
  }
  return out;
}

std::vector<ExtendedWeight> nontrivial_bottlenecks_all(const Graph& g,
                                                       const std::vector<Rational>& weights) {
  RootedSpanningTree tree = kruskal_mst(g, weights);
  TreeIndex index(g, tree, weights);
  ReplacementTable repl = replacements_all(g, weights, tree);
  std::vector<char> in_tree(g.edges.size(), 0);
  for (std::size_t v = 0; v < tree.parent.size(); ++v) {
    if (tree.parent[v] >= 0) in_tree[tree.parent_edge[v]] = 1;
  }
  std::vector<ExtendedWeight> out(g.edges.size(), ExtendedWeight::plus_infinity());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int u = g.edges[e].u;
    int v = g.edges[e].v;
    if (!in_tree[e]) {
      out[e] = ExtendedWeight(index.path_max(u, v));
      continue;
    }
    if (!repl[e]) continue;  // bridge
    const Replacement& r = *repl[e];
    Rational best = weights[r.edge];
    if (r.x != u) best = std::max(best, index.path_max(u, r.x));
    if (r.y != v) best = std::max(best, index.path_max(v, r.y));
    out[e] = ExtendedWeight(best);
  }
  return out;
}

std::vector<ThresholdPair> mst_thresholds(const Instance& inst) {
  const auto* fam = std::get_if<MstFamily>(&inst.family);
  if (fam == nullptr) {
    fail(ErrorCode::FamilyShapeMismatch, "instance family is not Mst");
  }
  if (inst.objective != Objective::Min) {
    fail(ErrorCode::FamilyShapeMismatch,
         "thresholds require a Min objective; negate maximization instances first");
  }
  std::vector<Rational> lo(inst.size()), hi(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    lo[i] = inst.intervals[i].lo;
    hi[i] = inst.intervals[i].hi;
  }
  std::vector<ExtendedWeight> plus = nontrivial_bottlenecks_all(fam->graph, lo);
  std::vector<ExtendedWeight> minus = nontrivial_bottlenecks_all(fam->graph, hi);
  std::vector<ThresholdPair> out;
  out.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    out.push_back(make_threshold_pair(plus[i], minus[i]));
  }
  return out;
}

ExtendedWeight bottleneck_single_check(const Graph& g, const std::vector<Rational>& weights,
                                       std::size_t element) {
  if (element >= g.edges.size()) {
    fail(ErrorCode::UnknownElement, "edge index out of range");
  }
  UnionFind uf(g.vertex_count);
  const int s = g.edges[element].u;
  const int t = g.edges[element].v;
  for (std::size_t idx : edges_by_weight(g, weights)) {
    if (idx == element) continue;
    uf.unite(g.edges[idx].u, g.edges[idx].v);
    if (uf.find(s) == uf.find(t)) return ExtendedWeight(weights[idx]);
  }
  return ExtendedWeight::plus_infinity();
}

}  // namespace admiq::mst
