#include "admiq/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>

#include "admiq/errors.hpp"

namespace admiq::oracle {

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

int component_count(const Graph& g) {
  UnionFind uf(g.vertex_count);
  int components = g.vertex_count;
  for (const auto& e : g.edges) {
    if (uf.unite(e.u, e.v)) --components;
  }
  return components;
}

// Guards enumeration against pathological dead-end explosion that the
// result-count cap alone would not catch.
struct EnumBudget {
  std::uint64_t remaining = 100'000'000;
  void tick() {
    if (remaining-- == 0) {
      fail(ErrorCode::TooLarge, "feasible-set enumeration exceeded its step budget");
    }
  }
};

void push_result(std::vector<std::uint64_t>& out, std::uint64_t mask) {
  if (out.size() >= kMaxFeasibleSets) {
    fail(ErrorCode::TooManySolutions,
         "more than " + std::to_string(kMaxFeasibleSets) + " feasible sets");
  }
  out.push_back(mask);
}

// All acyclic edge sets of the given size, i.e. the bases of the graphic
// matroid (spanning trees when the graph is connected and size = V-1).
void spanning_rec(const Graph& g, std::size_t start, int needed, UnionFind& uf,
                  std::uint64_t mask, std::vector<std::uint64_t>& out,
                  EnumBudget& budget) {
  budget.tick();
  if (needed == 0) {
    push_result(out, mask);
    return;
  }
  if (g.edges.size() - start < static_cast<std::size_t>(needed)) return;
  for (std::size_t i = start; i < g.edges.size(); ++i) {
    int a = uf.find(g.edges[i].u);
    int b = uf.find(g.edges[i].v);
    if (a == b) continue;
    UnionFind next = uf;
    next.parent[a] = b;
    spanning_rec(g, i + 1, needed - 1, next, mask | (std::uint64_t{1} << i), out,
                 budget);
  }
}

std::vector<std::uint64_t> enumerate_spanning_sets(const Graph& g, int size) {
  std::vector<std::uint64_t> out;
  UnionFind uf(g.vertex_count);
  EnumBudget budget;
  spanning_rec(g, 0, size, uf, 0, out, budget);
  return out;
}

using Adjacency = std::vector<std::vector<std::pair<std::size_t, int>>>;

Adjacency build_adjacency(const Graph& g, bool directed) {
  Adjacency adj(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].u].push_back({i, g.edges[i].v});
    if (!directed) adj[g.edges[i].v].push_back({i, g.edges[i].u});
  }
  return adj;
}

void paths_rec(const Adjacency& adj, int u, int target, std::vector<char>& on_path,
               std::uint64_t mask, std::vector<std::uint64_t>& out,
               EnumBudget& budget) {
  budget.tick();
  if (u == target) {
    push_result(out, mask);
    return;
  }
  on_path[u] = 1;
  for (const auto& [edge, to] : adj[u]) {
    if (on_path[to]) continue;
    paths_rec(adj, to, target, on_path, mask | (std::uint64_t{1} << edge), out,
              budget);
  }
  on_path[u] = 0;
}

std::vector<std::uint64_t> enumerate_simple_paths(const StPathFamily& fam) {
  Adjacency adj = build_adjacency(fam.graph, fam.directed);
  std::vector<char> on_path(fam.graph.vertex_count, 0);
  std::vector<std::uint64_t> out;
  EnumBudget budget;
  paths_rec(adj, fam.source, fam.target, on_path, 0, out, budget);
  return out;
}

// Every matching, the empty one included.
void matchings_rec(const Graph& g, std::size_t i, std::vector<char>& used,
                   std::uint64_t mask, std::vector<std::uint64_t>& out,
                   EnumBudget& budget) {
  budget.tick();
  if (i == g.edges.size()) {
    push_result(out, mask);
    return;
  }
  matchings_rec(g, i + 1, used, mask, out, budget);
  int u = g.edges[i].u;
  int v = g.edges[i].v;
  if (!used[u] && !used[v]) {
    used[u] = used[v] = 1;
    matchings_rec(g, i + 1, used, mask | (std::uint64_t{1} << i), out, budget);
    used[u] = used[v] = 0;
  }
}

std::vector<std::uint64_t> enumerate_matchings(const Graph& g) {
  std::vector<char> used(g.vertex_count, 0);
  std::vector<std::uint64_t> out;
  EnumBudget budget;
  matchings_rec(g, 0, used, 0, out, budget);
  return out;
}

void perfect_matchings_rec(const std::vector<int>& lefts, const Adjacency& adj,
                           std::size_t i, std::vector<char>& used,
                           std::uint64_t mask, std::vector<std::uint64_t>& out,
                           EnumBudget& budget) {
  budget.tick();
  if (i == lefts.size()) {
    push_result(out, mask);
    return;
  }
  for (const auto& [edge, to] : adj[lefts[i]]) {
    if (used[to]) continue;
    used[to] = 1;
    perfect_matchings_rec(lefts, adj, i + 1, used, mask | (std::uint64_t{1} << edge),
                          out, budget);
    used[to] = 0;
  }
}

std::vector<std::uint64_t> enumerate_perfect_matchings(
    const BipartitePerfectMatchingFamily& fam) {
  std::vector<int> lefts, rights;
  for (int v = 0; v < fam.graph.vertex_count; ++v) {
    (fam.left[v] ? lefts : rights).push_back(v);
  }
  if (lefts.size() != rights.size()) return {};
  // Edges are stored with arbitrary endpoint order; orient left -> right.
  Adjacency adj(fam.graph.vertex_count);
  for (std::size_t i = 0; i < fam.graph.edges.size(); ++i) {
    int u = fam.graph.edges[i].u;
    int v = fam.graph.edges[i].v;
    if (!fam.left[u]) std::swap(u, v);
    adj[u].push_back({i, v});
  }
  std::vector<char> used(fam.graph.vertex_count, 0);
  std::vector<std::uint64_t> out;
  EnumBudget budget;
  perfect_matchings_rec(lefts, adj, 0, used, 0, out, budget);
  return out;
}

std::vector<std::uint64_t> enumerate_rank_subsets(int n, int rank) {
  // C(n, rank) exactly, checked against the cap before enumerating.
  BigInt count = 1;
  for (int i = 0; i < rank; ++i) {
    count = count * (n - i) / (i + 1);
  }
  if (count > BigInt(kMaxFeasibleSets)) {
    fail(ErrorCode::TooManySolutions,
         "more than " + std::to_string(kMaxFeasibleSets) + " feasible sets");
  }
  std::vector<std::uint64_t> out;
  std::vector<int> pick(rank);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::uint64_t mask = 0;
    for (int p : pick) mask |= std::uint64_t{1} << p;
    out.push_back(mask);
    int i = rank - 1;
    while (i >= 0 && pick[i] == n - rank + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < rank; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (rank == 0) out = {0};
  return out;
}

template <typename Num>
Num mask_sum(std::uint64_t mask, const std::vector<Num>& values) {
  Num total{};
  for (std::uint64_t m = mask; m; m &= m - 1) {
    total += values[std::countr_zero(m)];
  }
  return total;
}

std::vector<std::size_t> mask_to_indices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

bool constraint_allows(const SolveConstraint& con, std::uint64_t mask) {
  switch (con.kind) {
    case SolveConstraint::Kind::Free: return true;
    case SolveConstraint::Kind::Include:
      return (mask >> con.element) & 1;
    case SolveConstraint::Kind::Exclude:
      return !((mask >> con.element) & 1);
  }
  return true;
}

SolveResult solve_over_masks(const std::vector<std::uint64_t>& masks,
                             const std::vector<Rational>& weights,
                             const SolveConstraint& con) {
  bool found = false;
  Rational best;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask : masks) {
    if (!constraint_allows(con, mask)) continue;
    Rational value = mask_sum(mask, weights);
    if (!found || value < best) {
      found = true;
      best = std::move(value);
      best_mask = mask;
    }
  }
  if (!found) return {ExtendedWeight::plus_infinity(), std::nullopt};
  return {ExtendedWeight(best), mask_to_indices(best_mask)};
}

// ---------------------------------------------------------------------------
// Scaled integer fast path. All interval endpoints are mapped to a common
// denominator; if every scaled value (and any sum of them) provably fits in
// int64 the realization scans below run on machine integers.

struct ScaledIntervals {
  bool ok = false;
  BigInt scale = 1;
  std::vector<std::int64_t> lo, hi;
};

ScaledIntervals try_scale(const std::vector<UncertaintyInterval>& intervals) {
  ScaledIntervals s;
  BigInt L = 1;
  const BigInt int64_max(std::numeric_limits<std::int64_t>::max());
  for (const auto& iv : intervals) {
    L = boost::multiprecision::lcm(L, denominator(iv.lo));
    L = boost::multiprecision::lcm(L, denominator(iv.hi));
    if (L > int64_max) return s;
  }
  const BigInt bound =
      (int64_max / 4) / BigInt(std::max<std::size_t>(intervals.size(), 1));
  auto convert = [&](const Rational& v, std::int64_t& out) {
    BigInt scaled = numerator(v) * (L / denominator(v));
    if (scaled > bound || scaled < -bound) return false;
    out = scaled.convert_to<std::int64_t>();
    return true;
  };
  s.lo.resize(intervals.size());
  s.hi.resize(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!convert(intervals[i].lo, s.lo[i]) || !convert(intervals[i].hi, s.hi[i])) {
      return s;
    }
  }
  s.scale = L;
  s.ok = true;
  return s;
}

Rational unscale(std::int64_t value, const BigInt& scale) {
  return Rational(BigInt(value), scale);
}

// Elements (other than `element`) whose weight actually varies.
std::vector<std::size_t> free_elements(const Instance& inst, std::size_t element) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i != element && !inst.intervals[i].is_trivial()) out.push_back(i);
  }
  return out;
}

void check_free_cap(std::size_t count) {
  if (count > static_cast<std::size_t>(kMaxFreeIntervals)) {
    fail(ErrorCode::TooManyFreeIntervals,
         std::to_string(count) + " nontrivial intervals exceed the cap of " +
             std::to_string(kMaxFreeIntervals));
  }
}

// ---------------------------------------------------------------------------
// Realization-scan kernels for brute_force_thresholds. Each computes
//   min / max over extreme realizations r of   OPT_without_e(r) - OPT_with_e(r)
// where the with-e optimum reads the weight of e as 0. Callers have already
// ruled out the infeasible sides.

struct ScanBounds {
  Rational lo, hi;
};

// Feasible sets given as masks; per realization both optima are evaluated
// with a precomputed delta-subset-sum table over the free elements.
ScanBounds scan_masks_int64(const std::vector<std::uint64_t>& without_e,
                            const std::vector<std::uint64_t>& with_e,
                            std::size_t element, const ScaledIntervals& sc,
                            const std::vector<std::size_t>& free_idx) {
  const int k = static_cast<int>(free_idx.size());
  std::vector<int> slot(sc.lo.size(), -1);
  for (int j = 0; j < k; ++j) slot[free_idx[j]] = j;

  auto prepare = [&](const std::vector<std::uint64_t>& masks, bool drop_element) {
    std::vector<std::uint32_t> fm(masks.size());
    std::vector<std::int64_t> base(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) {
      std::uint32_t f = 0;
      std::int64_t b = 0;
      for (std::uint64_t m = masks[i]; m; m &= m - 1) {
        std::size_t idx = std::countr_zero(m);
        if (drop_element && idx == element) continue;
        b += sc.lo[idx];
        if (slot[idx] >= 0) f |= std::uint32_t{1} << slot[idx];
      }
      fm[i] = f;
      base[i] = b;
    }
    return std::pair{std::move(fm), std::move(base)};
  };

  auto [fm_without, base_without] = prepare(without_e, false);
  auto [fm_with, base_with] = prepare(with_e, true);

  std::vector<std::int64_t> table(std::size_t{1} << k, 0);
  for (std::size_t r = 1; r < table.size(); ++r) {
    int j = std::countr_zero(r);
    table[r] = table[r & (r - 1)] + (sc.hi[free_idx[j]] - sc.lo[free_idx[j]]);
  }

  std::int64_t best_min = 0, best_max = 0;
  bool first = true;
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::int64_t a = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < fm_without.size(); ++i) {
      std::int64_t v = base_without[i] + table[fm_without[i] & r];
      if (v < a) a = v;
    }
    std::int64_t b = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < fm_with.size(); ++i) {
      std::int64_t v = base_with[i] + table[fm_with[i] & r];
      if (v < b) b = v;
    }
    std::int64_t diff = a - b;
    if (first || diff < best_min) best_min = diff;
    if (first || diff > best_max) best_max = diff;
    first = false;
  }
  return {unscale(best_min, sc.scale), unscale(best_max, sc.scale)};
}

ScanBounds scan_masks_rational(const std::vector<std::uint64_t>& without_e,
                               const std::vector<std::uint64_t>& with_e,
                               std::size_t element,
                               const std::vector<UncertaintyInterval>& intervals,
                               const std::vector<std::size_t>& free_idx) {
  const int k = static_cast<int>(free_idx.size());
  std::vector<Rational> weights(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) weights[i] = intervals[i].lo;

  Rational best_min, best_max;
  bool first = true;
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
    for (int j = 0; j < k; ++j) {
      const auto& iv = intervals[free_idx[j]];
      weights[free_idx[j]] = ((r >> j) & 1) ? iv.hi : iv.lo;
    }
    bool have_a = false, have_b = false;
    Rational a, b;
    for (std::uint64_t mask : without_e) {
      Rational v = mask_sum(mask, weights);
      if (!have_a || v < a) {
        a = std::move(v);
        have_a = true;
      }
    }
    for (std::uint64_t mask : with_e) {
      Rational v = mask_sum(mask & ~(std::uint64_t{1} << element), weights);
      if (!have_b || v < b) {
        b = std::move(v);
        have_b = true;
      }
    }
    Rational diff = a - b;
    if (first || diff < best_min) best_min = diff;
    if (first || diff > best_max) best_max = diff;
    first = false;
  }
  return {std::move(best_min), std::move(best_max)};
}

// Uniform matroid: the threshold at one realization is the rank-th smallest
// weight among the other elements (difference of the two greedy bases).
template <typename Num>
ScanBounds scan_uniform(const UniformMatroidFamily& fam, std::size_t element,
                        const std::vector<Num>& lo, const std::vector<Num>& hi,
                        const std::vector<std::size_t>& free_idx,
                        const std::function<Rational(const Num&)>& back) {
  const int k = static_cast<int>(free_idx.size());
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (i != element) others.push_back(i);
  }
  std::vector<Num> current(lo);
  std::vector<Num> work(others.size());
  Rational best_min, best_max;
  bool first = true;
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
    for (int j = 0; j < k; ++j) {
      current[free_idx[j]] = ((r >> j) & 1) ? hi[free_idx[j]] : lo[free_idx[j]];
    }
    for (std::size_t i = 0; i < others.size(); ++i) work[i] = current[others[i]];
    std::nth_element(work.begin(), work.begin() + (fam.rank - 1), work.end());
    Rational diff = back(work[fam.rank - 1]);
    if (first || diff < best_min) best_min = diff;
    if (first || diff > best_max) best_max = diff;
    first = false;
  }
  return {std::move(best_min), std::move(best_max)};
}

// Graphic matroid: two greedy forest runs per realization (element removed,
// element seeded at weight 0).
template <typename Num>
ScanBounds scan_graphic(const Graph& g, std::size_t element,
                        const std::vector<Num>& lo, const std::vector<Num>& hi,
                        const std::vector<std::size_t>& free_idx,
                        const std::function<Rational(const Num&)>& back) {
  const int k = static_cast<int>(free_idx.size());
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i != element) others.push_back(i);
  }
  std::vector<Num> current(lo);
  std::vector<std::size_t> order(others);
  Rational best_min, best_max;
  bool first = true;
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
    for (int j = 0; j < k; ++j) {
      current[free_idx[j]] = ((r >> j) & 1) ? hi[free_idx[j]] : lo[free_idx[j]];
    }
    order = others;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (current[a] != current[b]) return current[a] < current[b];
      return a < b;
    });
    Num a{};
    {
      UnionFind uf(g.vertex_count);
      for (std::size_t idx : order) {
        if (uf.unite(g.edges[idx].u, g.edges[idx].v)) a += current[idx];
      }
    }
    Num b{};
    {
      UnionFind uf(g.vertex_count);
      uf.unite(g.edges[element].u, g.edges[element].v);
      for (std::size_t idx : order) {
        if (uf.unite(g.edges[idx].u, g.edges[idx].v)) b += current[idx];
      }
    }
    Rational diff = back(a) - back(b);
    if (first || diff < best_min) best_min = diff;
    if (first || diff > best_max) best_max = diff;
    first = false;
  }
  return {std::move(best_min), std::move(best_max)};
}

// ---------------------------------------------------------------------------
// Tree matching dynamic program (minimization). Handles an excluded edge and
// blocked vertices, which is enough for Free / Exclude / Include solves.

struct TreeDpResult {
  Rational value;
  std::vector<std::size_t> edges;
};

struct TreeDp {
  const Graph& g;
  const std::vector<Rational>& w;
  std::size_t excluded;
  const std::vector<char>& blocked;
  Adjacency adj;
  std::vector<char> visited;

  TreeDp(const Graph& g_, const std::vector<Rational>& w_, std::size_t excluded_,
         const std::vector<char>& blocked_)
      : g(g_), w(w_), excluded(excluded_), blocked(blocked_),
        adj(build_adjacency(g_, false)), visited(g_.vertex_count, 0) {}

  struct NodeRes {
    Rational unmatched;                    // best with the root left unmatched
    Rational best;                         // best overall
    std::vector<std::size_t> unmatched_edges;
    std::vector<std::size_t> best_edges;
  };

  NodeRes dfs(int v) {
    visited[v] = 1;
    std::vector<std::size_t> child_edge;
    std::vector<NodeRes> child;
    for (const auto& [edge, to] : adj[v]) {
      if (visited[to] || blocked[to]) continue;
      child_edge.push_back(edge);
      child.push_back(dfs(to));
    }
    NodeRes res;
    res.unmatched = 0;
    for (const auto& c : child) {
      res.unmatched += c.best;
      res.unmatched_edges.insert(res.unmatched_edges.end(), c.best_edges.begin(),
                                 c.best_edges.end());
    }
    res.best = res.unmatched;
    res.best_edges = res.unmatched_edges;
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (child_edge[i] == excluded) continue;
      Rational cand = res.unmatched - child[i].best + child[i].unmatched + w[child_edge[i]];
      if (cand < res.best) {
        res.best = std::move(cand);
        res.best_edges.clear();
        for (std::size_t j = 0; j < child.size(); ++j) {
          const auto& take = (j == i) ? child[j].unmatched_edges : child[j].best_edges;
          res.best_edges.insert(res.best_edges.end(), take.begin(), take.end());
        }
        res.best_edges.push_back(child_edge[i]);
      }
    }
    return res;
  }

  TreeDpResult run() {
    TreeDpResult total;
    total.value = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
      if (visited[v] || blocked[v]) continue;
      NodeRes r = dfs(v);
      total.value += r.best;
      total.edges.insert(total.edges.end(), r.best_edges.begin(), r.best_edges.end());
    }
    std::sort(total.edges.begin(), total.edges.end());
    return total;
  }
};

SolveResult tree_matching_solve(const Graph& g, const std::vector<Rational>& w,
                                const SolveConstraint& con) {
  std::vector<char> blocked(g.vertex_count, 0);
  if (con.kind == SolveConstraint::Kind::Include) {
    const auto& e = g.edges[con.element];
    blocked[e.u] = blocked[e.v] = 1;
    TreeDpResult rest = TreeDp(g, w, kNoElement, blocked).run();
    std::vector<std::size_t> edges = rest.edges;
    edges.push_back(con.element);
    std::sort(edges.begin(), edges.end());
    return {ExtendedWeight(rest.value + w[con.element]), std::move(edges)};
  }
  std::size_t excluded =
      con.kind == SolveConstraint::Kind::Exclude ? con.element : kNoElement;
  TreeDpResult r = TreeDp(g, w, excluded, blocked).run();
  return {ExtendedWeight(r.value), std::move(r.edges)};
}

// Value-only variant used by the realization scan.
Rational tree_matching_value(const Graph& g, const std::vector<Rational>& w,
                             std::size_t excluded, int block_u, int block_v) {
  std::vector<char> blocked(g.vertex_count, 0);
  if (block_u >= 0) blocked[block_u] = 1;
  if (block_v >= 0) blocked[block_v] = 1;
  return TreeDp(g, w, excluded, blocked).run().value;
}

ScanBounds scan_tree_matching(const Graph& g, std::size_t element,
                              const std::vector<UncertaintyInterval>& intervals,
                              const std::vector<std::size_t>& free_idx) {
  const int k = static_cast<int>(free_idx.size());
  std::vector<Rational> weights(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) weights[i] = intervals[i].lo;
  weights[element] = 0;  // never read on either side of the difference
  const auto& e = g.edges[element];
  Rational best_min, best_max;
  bool first = true;
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
    for (int j = 0; j < k; ++j) {
      const auto& iv = intervals[free_idx[j]];
      weights[free_idx[j]] = ((r >> j) & 1) ? iv.hi : iv.lo;
    }
    Rational a = tree_matching_value(g, weights, element, -1, -1);
    Rational b = tree_matching_value(g, weights, kNoElement, e.u, e.v);
    Rational diff = a - b;
    if (first || diff < best_min) best_min = diff;
    if (first || diff > best_max) best_max = diff;
    first = false;
  }
  return {std::move(best_min), std::move(best_max)};
}

// ---------------------------------------------------------------------------
// Exact assignment solver (potentials + shortest augmenting paths) used as an
// independent cross-check of the perfect-matching enumeration.

std::optional<Rational> assignment_min_cost(
    const std::vector<std::vector<ExtendedWeight>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return Rational(0);
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<ExtendedWeight> minv(n + 1, ExtendedWeight::plus_infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0];
      int j1 = -1;
      ExtendedWeight delta = ExtendedWeight::plus_infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const ExtendedWeight& c = cost[i0 - 1][j - 1];
        ExtendedWeight cur =
            c.is_finite() ? ExtendedWeight(c.finite_value() - u[i0] - v[j])
                          : ExtendedWeight::plus_infinity();
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (!delta.is_finite()) return std::nullopt;  // remaining rows are cut off
      const Rational& d = delta.finite_value();
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += d;
          v[j] -= d;
        } else if (minv[j].is_finite()) {
          minv[j] = ExtendedWeight(minv[j].finite_value() - d);
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  Rational total = 0;
  for (int j = 1; j <= n; ++j) {
    const ExtendedWeight& c = cost[p[j] - 1][j - 1];
    if (!c.is_finite()) {
      fail(ErrorCode::OracleFailure, "assignment matched a forbidden pair");
    }
    total += c.finite_value();
  }
  return total;
}

// Builds the left x right cost matrix honoring the constraint and returns the
// optimal-assignment value (+inf encoded as nullopt when no perfect matching).
std::optional<Rational> bpm_assignment_value(
    const BipartitePerfectMatchingFamily& fam, const std::vector<Rational>& w,
    const SolveConstraint& con) {
  std::vector<int> lefts, rights;
  for (int v = 0; v < fam.graph.vertex_count; ++v) {
    (fam.left[v] ? lefts : rights).push_back(v);
  }
  if (lefts.size() != rights.size()) return std::nullopt;

  int skip_left = -1, skip_right = -1;
  Rational offset = 0;
  if (con.kind == SolveConstraint::Kind::Include) {
    auto e = fam.graph.edges[con.element];
    if (!fam.left[e.u]) std::swap(e.u, e.v);
    skip_left = e.u;
    skip_right = e.v;
    offset = w[con.element];
  }
  std::vector<int> rows, cols;
  for (int v : lefts) {
    if (v != skip_left) rows.push_back(v);
  }
  for (int v : rights) {
    if (v != skip_right) cols.push_back(v);
  }
  std::vector<int> col_of(fam.graph.vertex_count, -1);
  for (std::size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = static_cast<int>(j);
  std::vector<int> row_of(fam.graph.vertex_count, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);

  std::vector<std::vector<ExtendedWeight>> cost(
      rows.size(),
      std::vector<ExtendedWeight>(cols.size(), ExtendedWeight::plus_infinity()));
  for (std::size_t i = 0; i < fam.graph.edges.size(); ++i) {
    if (con.kind == SolveConstraint::Kind::Exclude && i == con.element) continue;
    if (con.kind == SolveConstraint::Kind::Include && i == con.element) continue;
    auto e = fam.graph.edges[i];
    if (!fam.left[e.u]) std::swap(e.u, e.v);
    int r = row_of[e.u];
    int c = col_of[e.v];
    if (r < 0 || c < 0) continue;  // incident to the forced edge's endpoints
    if (!cost[r][c].is_finite() || ExtendedWeight(w[i]) < cost[r][c]) {
      cost[r][c] = ExtendedWeight(w[i]);
    }
  }
  auto value = assignment_min_cost(cost);
  if (!value) return std::nullopt;
  return *value + offset;
}

// ---------------------------------------------------------------------------
// Matroid greedy solves (uniform: selection; graphic: Kruskal forest).

SolveResult uniform_solve(const UniformMatroidFamily& fam,
                          const std::vector<Rational>& w,
                          const SolveConstraint& con) {
  const int n = fam.size;
  const int rank = fam.rank;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w[a] != w[b]) return w[a] < w[b];
    return a < b;
  });
  std::vector<std::size_t> picked;
  Rational value = 0;
  switch (con.kind) {
    case SolveConstraint::Kind::Free:
      for (std::size_t idx : order) {
        if (static_cast<int>(picked.size()) == rank) break;
        picked.push_back(idx);
        value += w[idx];
      }
      break;
    case SolveConstraint::Kind::Include:
      if (rank == 0) return {ExtendedWeight::plus_infinity(), std::nullopt};
      picked.push_back(con.element);
      value += w[con.element];
      for (std::size_t idx : order) {
        if (static_cast<int>(picked.size()) == rank) break;
        if (idx == con.element) continue;
        picked.push_back(idx);
        value += w[idx];
      }
      break;
    case SolveConstraint::Kind::Exclude:
      if (rank > n - 1) return {ExtendedWeight::plus_infinity(), std::nullopt};
      for (std::size_t idx : order) {
        if (static_cast<int>(picked.size()) == rank) break;
        if (idx == con.element) continue;
        picked.push_back(idx);
        value += w[idx];
      }
      break;
  }
  std::sort(picked.begin(), picked.end());
  return {ExtendedWeight(value), std::move(picked)};
}

SolveResult graphic_solve(const Graph& g, const std::vector<Rational>& w,
                          const SolveConstraint& con) {
  const int rank = g.vertex_count - component_count(g);
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w[a] != w[b]) return w[a] < w[b];
    return a < b;
  });
  UnionFind uf(g.vertex_count);
  std::vector<std::size_t> picked;
  Rational value = 0;
  if (con.kind == SolveConstraint::Kind::Include) {
    uf.unite(g.edges[con.element].u, g.edges[con.element].v);
    picked.push_back(con.element);
    value += w[con.element];
  }
  for (std::size_t idx : order) {
    if (con.kind != SolveConstraint::Kind::Free && idx == con.element) continue;
    if (uf.unite(g.edges[idx].u, g.edges[idx].v)) {
      picked.push_back(idx);
      value += w[idx];
    }
  }
  if (static_cast<int>(picked.size()) < rank) {
    // only possible for Exclude on a coloop
    return {ExtendedWeight::plus_infinity(), std::nullopt};
  }
  std::sort(picked.begin(), picked.end());
  return {ExtendedWeight(value), std::move(picked)};
}

SolveResult kruskal_spanning_tree(const Graph& g, const std::vector<Rational>& w) {
  SolveResult r = graphic_solve(g, w, free_constraint());
  if (r.solution &&
      static_cast<int>(r.solution->size()) != g.vertex_count - 1) {
    return {ExtendedWeight::plus_infinity(), std::nullopt};  // disconnected
  }
  return r;
}

// ---------------------------------------------------------------------------
// Universal-optimality tests over enumerated feasible sets.

template <typename Num>
std::optional<std::size_t> universal_index(const std::vector<std::uint64_t>& masks,
                                           const std::vector<Num>& lo,
                                           const std::vector<Num>& hi) {
  if (masks.empty()) return std::nullopt;
  std::vector<Num> hs(masks.size());
  std::size_t arg_best = 0;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    hs[i] = mask_sum(masks[i], hi);
    if (hs[i] < hs[arg_best]) arg_best = i;
  }
  std::vector<Num> delta(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) delta[i] = hi[i] - lo[i];
  std::vector<Num> ls(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) ls[i] = mask_sum(masks[i], lo);

  // A universal optimum is optimal at the all-hi realization, so only the
  // all-hi argmin set needs the certificate test: with weights hi-on-S and
  // lo-off-S every rival attains its most favorable comparison at once.
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (hs[i] != hs[arg_best]) continue;
    bool ok = true;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      Num rival = ls[j] + mask_sum(masks[j] & masks[i], delta);
      if (rival < hs[i]) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> universal_over(const std::vector<std::uint64_t>& masks,
                                          const std::vector<UncertaintyInterval>& iv) {
  ScaledIntervals sc = try_scale(iv);
  if (sc.ok) {
    return universal_index(masks, sc.lo, sc.hi);
  }
  std::vector<Rational> lo(iv.size()), hi(iv.size());
  for (std::size_t i = 0; i < iv.size(); ++i) {
    lo[i] = iv[i].lo;
    hi[i] = iv[i].hi;
  }
  return universal_index(masks, lo, hi);
}

}  // namespace

// ---------------------------------------------------------------------------

ExactFamily::ExactFamily(const Instance& inst) : inst_(&inst) {
  if (inst.objective != Objective::Min) {
    fail(ErrorCode::FamilyShapeMismatch,
         "exact solves require a Min objective; negate maximization instances first");
  }
}

const std::vector<std::uint64_t>& ExactFamily::feasible_masks() const {
  if (masks_) return *masks_;
  if (inst_->size() > 64) {
    fail(ErrorCode::TooLarge, "feasible-set enumeration supports at most 64 elements");
  }
  masks_ = std::visit(
      [&](const auto& fam) -> std::vector<std::uint64_t> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MstFamily>) {
          if (fam.graph.vertex_count > kMaxSpanningVertices) {
            fail(ErrorCode::TooLarge,
                 "spanning-set enumeration is certified only up to " +
                     std::to_string(kMaxSpanningVertices) + " vertices");
          }
          return enumerate_spanning_sets(fam.graph, fam.graph.vertex_count - 1);
        } else if constexpr (std::is_same_v<T, GraphicMatroidFamily>) {
          return enumerate_spanning_sets(
              fam.graph, fam.graph.vertex_count - component_count(fam.graph));
        } else if constexpr (std::is_same_v<T, StPathFamily>) {
          return enumerate_simple_paths(fam);
        } else if constexpr (std::is_same_v<T, TreeMatchingFamily>) {
          return enumerate_matchings(fam.graph);
        } else if constexpr (std::is_same_v<T, BipartitePerfectMatchingFamily>) {
          if (fam.graph.vertex_count > kMaxPerfectMatchingVertices) {
            fail(ErrorCode::TooLarge,
                 "perfect-matching enumeration is certified only up to " +
                     std::to_string(kMaxPerfectMatchingVertices) + " vertices");
          }
          return enumerate_perfect_matchings(fam);
        } else {
          return enumerate_rank_subsets(fam.size, fam.rank);
        }
      },
      inst_->family);
  return *masks_;
}

SolveResult ExactFamily::solve(const std::vector<Rational>& weights,
                               const SolveConstraint& con) const {
  if (weights.size() != inst_->size()) {
    fail(ErrorCode::InvalidRealization, "expected one weight per element");
  }
  if (con.kind != SolveConstraint::Kind::Free && con.element >= inst_->size()) {
    fail(ErrorCode::UnknownElement, "constraint element index out of range");
  }
  return std::visit(
      [&](const auto& fam) -> SolveResult {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MstFamily>) {
          if (fam.graph.vertex_count <= kMaxSpanningVertices) {
            return solve_over_masks(feasible_masks(), weights, con);
          }
          if (con.kind == SolveConstraint::Kind::Free) {
            return kruskal_spanning_tree(fam.graph, weights);
          }
          fail(ErrorCode::TooLarge,
               "constrained spanning-tree solves are certified only up to " +
                   std::to_string(kMaxSpanningVertices) + " vertices");
        } else if constexpr (std::is_same_v<T, StPathFamily>) {
          return solve_over_masks(feasible_masks(), weights, con);
        } else if constexpr (std::is_same_v<T, TreeMatchingFamily>) {
          return tree_matching_solve(fam.graph, weights, con);
        } else if constexpr (std::is_same_v<T, BipartitePerfectMatchingFamily>) {
          SolveResult by_enum = solve_over_masks(feasible_masks(), weights, con);
          auto by_assignment = bpm_assignment_value(fam, weights, con);
          ExtendedWeight check = by_assignment
                                     ? ExtendedWeight(*by_assignment)
                                     : ExtendedWeight::plus_infinity();
          if (check != by_enum.value) {
            fail(ErrorCode::OracleFailure,
                 "perfect-matching enumeration and assignment solver disagree: " +
                     format_extended(by_enum.value) + " vs " +
                     format_extended(check));
          }
          return by_enum;
        } else if constexpr (std::is_same_v<T, UniformMatroidFamily>) {
          return uniform_solve(fam, weights, con);
        } else {
          return graphic_solve(fam.graph, weights, con);
        }
      },
      inst_->family);
}

ExtendedWeight ExactFamily::threshold_at(std::size_t element,
                                         const std::vector<Rational>& weights) const {
  if (element >= inst_->size()) {
    fail(ErrorCode::UnknownElement, "element index out of range");
  }
  SolveResult without = solve(weights, exclude_element(element));
  std::vector<Rational> zeroed = weights;
  zeroed[element] = 0;
  SolveResult with = solve(zeroed, include_element(element));
  bool no_without = without.value.is_plus_infinity();
  bool no_with = with.value.is_plus_infinity();
  if (no_without && no_with) {
    fail(ErrorCode::NoFeasibleSet, "the instance has no feasible set at all");
  }
  if (no_without) return ExtendedWeight::plus_infinity();   // mandatory
  if (no_with) return ExtendedWeight::minus_infinity();     // forbidden
  return ExtendedWeight(without.value.finite_value() - with.value.finite_value());
}

namespace {

// Extreme-scan thresholds under an explicit interval vector. Used both for
// the instance's own intervals and for partially pinned ones: the query
// admissibility test evaluates thresholds of residual instances.
ThresholdPair thresholds_over(const ExactFamily& engine, std::size_t element,
                              const std::vector<UncertaintyInterval>& intervals,
                              const BruteForceOptions& options) {
  const Instance& inst = engine.instance();
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i != element && !intervals[i].is_trivial()) free_idx.push_back(i);
  }
  check_free_cap(free_idx.size());

  return std::visit(
      [&](const auto& fam) -> ThresholdPair {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, UniformMatroidFamily>) {
          if (fam.rank == 0) {
            return make_threshold_pair(ExtendedWeight::minus_infinity(),
                                       ExtendedWeight::minus_infinity());
          }
          if (fam.rank == fam.size) {
            return make_threshold_pair(ExtendedWeight::plus_infinity(),
                                       ExtendedWeight::plus_infinity());
          }
          ScaledIntervals sc =
              options.allow_scaled_fast_path ? try_scale(intervals) : ScaledIntervals{};
          ScanBounds bounds;
          if (sc.ok) {
            std::function<Rational(const std::int64_t&)> back =
                [&](const std::int64_t& v) { return unscale(v, sc.scale); };
            bounds = scan_uniform<std::int64_t>(fam, element, sc.lo, sc.hi, free_idx, back);
          } else {
            std::vector<Rational> lo(intervals.size()), hi(intervals.size());
            for (std::size_t i = 0; i < intervals.size(); ++i) {
              lo[i] = intervals[i].lo;
              hi[i] = intervals[i].hi;
            }
            std::function<Rational(const Rational&)> back = [](const Rational& v) {
              return v;
            };
            bounds = scan_uniform<Rational>(fam, element, lo, hi, free_idx, back);
          }
          return make_threshold_pair(ExtendedWeight(bounds.lo), ExtendedWeight(bounds.hi));
        } else if constexpr (std::is_same_v<T, GraphicMatroidFamily>) {
          Graph without = fam.graph;
          without.edges.erase(without.edges.begin() + element);
          if (component_count(without) != component_count(fam.graph)) {
            return make_threshold_pair(ExtendedWeight::plus_infinity(),
                                       ExtendedWeight::plus_infinity());
          }
          ScaledIntervals sc =
              options.allow_scaled_fast_path ? try_scale(intervals) : ScaledIntervals{};
          ScanBounds bounds;
          if (sc.ok) {
            std::function<Rational(const std::int64_t&)> back =
                [&](const std::int64_t& v) { return unscale(v, sc.scale); };
            bounds = scan_graphic<std::int64_t>(fam.graph, element, sc.lo, sc.hi,
                                                free_idx, back);
          } else {
            std::vector<Rational> lo(intervals.size()), hi(intervals.size());
            for (std::size_t i = 0; i < intervals.size(); ++i) {
              lo[i] = intervals[i].lo;
              hi[i] = intervals[i].hi;
            }
            std::function<Rational(const Rational&)> back = [](const Rational& v) {
              return v;
            };
            bounds = scan_graphic<Rational>(fam.graph, element, lo, hi, free_idx, back);
          }
          return make_threshold_pair(ExtendedWeight(bounds.lo), ExtendedWeight(bounds.hi));
        } else if constexpr (std::is_same_v<T, TreeMatchingFamily>) {
          ScanBounds bounds = scan_tree_matching(fam.graph, element, intervals, free_idx);
          return make_threshold_pair(ExtendedWeight(bounds.lo), ExtendedWeight(bounds.hi));
        } else {
          const auto& masks = engine.feasible_masks();
          std::vector<std::uint64_t> with_e, without_e;
          for (std::uint64_t mask : masks) {
            ((mask >> element) & 1 ? with_e : without_e).push_back(mask);
          }
          if (with_e.empty() && without_e.empty()) {
            fail(ErrorCode::NoFeasibleSet, "the instance has no feasible set at all");
          }
          if (without_e.empty()) {
            return make_threshold_pair(ExtendedWeight::plus_infinity(),
                                       ExtendedWeight::plus_infinity());
          }
          if (with_e.empty()) {
            return make_threshold_pair(ExtendedWeight::minus_infinity(),
                                       ExtendedWeight::minus_infinity());
          }
          ScaledIntervals sc =
              options.allow_scaled_fast_path ? try_scale(intervals) : ScaledIntervals{};
          ScanBounds bounds =
              sc.ok ? scan_masks_int64(without_e, with_e, element, sc, free_idx)
                    : scan_masks_rational(without_e, with_e, element, intervals,
                                          free_idx);
          return make_threshold_pair(ExtendedWeight(bounds.lo), ExtendedWeight(bounds.hi));
        }
      },
      inst.family);
}

}  // namespace

ThresholdPair ExactFamily::brute_force_thresholds(std::size_t element,
                                                  const BruteForceOptions& options) const {
  if (element >= inst_->size()) {
    fail(ErrorCode::UnknownElement, "element index out of range");
  }
  return thresholds_over(*this, element, inst_->intervals, options);
}

ThresholdPair ExactFamily::thresholds_via_solution_enumeration(std::size_t element) const {
  if (element >= inst_->size()) {
    fail(ErrorCode::UnknownElement, "element index out of range");
  }
  const auto& masks = feasible_masks();
  const std::uint64_t ebit = std::uint64_t{1} << element;
  std::vector<std::uint64_t> with_e, without_e;
  for (std::uint64_t mask : masks) {
    (mask & ebit ? with_e : without_e).push_back(mask);
  }
  if (with_e.empty() && without_e.empty()) {
    fail(ErrorCode::NoFeasibleSet, "the instance has no feasible set at all");
  }
  if (without_e.empty()) {
    return make_threshold_pair(ExtendedWeight::plus_infinity(),
                               ExtendedWeight::plus_infinity());
  }
  if (with_e.empty()) {
    return make_threshold_pair(ExtendedWeight::minus_infinity(),
                               ExtendedWeight::minus_infinity());
  }

  const auto& iv = inst_->intervals;
  auto weight_under = [&](std::uint64_t set, std::uint64_t low_set) {
    // lo on low_set, hi elsewhere; the element's own weight is read as 0.
    Rational total = 0;
    for (std::uint64_t m = set & ~ebit; m; m &= m - 1) {
      std::size_t i = std::countr_zero(m);
      total += (low_set >> i) & 1 ? iv[i].lo : iv[i].hi;
    }
    return total;
  };

  // Inclusion threshold: scan sets avoiding the element. Each candidate S is
  // kept only if it is optimal among avoiding sets under its own worst-case
  // weights (lo on S, hi off S); the value is then lo(S) minus the best
  // element-containing set under the same weights.
  bool have_plus = false;
  Rational t_plus;
  for (std::uint64_t s : without_e) {
    Rational vs = weight_under(s, s);
    bool optimal = true;
    for (std::uint64_t rival : without_e) {
      if (weight_under(rival, s) < vs) {
        optimal = false;
        break;
      }
    }
    if (!optimal) continue;
    bool have_inner = false;
    Rational inner;
    for (std::uint64_t t : with_e) {
      Rational v = weight_under(t, s);
      if (!have_inner || v < inner) {
        inner = std::move(v);
        have_inner = true;
      }
    }
    Rational candidate = vs - inner;
    if (!have_plus || candidate < t_plus) {
      t_plus = std::move(candidate);
      have_plus = true;
    }
  }

  // Exclusion threshold: dual scan over sets containing the element.
  bool have_minus = false;
  Rational t_minus;
  for (std::uint64_t t : with_e) {
    Rational vt = weight_under(t, t);
    bool optimal = true;
    for (std::uint64_t rival : with_e) {
      if (weight_under(rival, t) < vt) {
        optimal = false;
        break;
      }
    }
    if (!optimal) continue;
    bool have_inner = false;
    Rational inner;
    for (std::uint64_t s : without_e) {
      Rational v = weight_under(s, t);
      if (!have_inner || v < inner) {
        inner = std::move(v);
        have_inner = true;
      }
    }
    Rational candidate = inner - vt;
    if (!have_minus || candidate > t_minus) {
      t_minus = std::move(candidate);
      have_minus = true;
    }
  }

  if (!have_plus || !have_minus) {
    fail(ErrorCode::OracleFailure, "solution-enumeration scan found no candidate");
  }
  return make_threshold_pair(ExtendedWeight(t_plus), ExtendedWeight(t_minus));
}

std::optional<std::vector<std::size_t>> ExactFamily::find_universally_optimal() const {
  return find_universally_optimal(inst_->intervals);
}

std::optional<std::vector<std::size_t>> ExactFamily::find_universally_optimal(
    const std::vector<UncertaintyInterval>& pinned) const {
  const auto& masks = feasible_masks();
  auto idx = universal_over(masks, pinned);
  if (!idx) return std::nullopt;
  return mask_to_indices(masks[*idx]);
}

bool ExactFamily::is_universally_optimal(
    const std::vector<std::size_t>& solution,
    const std::vector<UncertaintyInterval>& pinned) const {
  const auto& masks = feasible_masks();
  std::uint64_t mask = 0;
  for (std::size_t i : solution) {
    if (i >= inst_->size()) {
      fail(ErrorCode::UnknownElement, "solution element index out of range");
    }
    mask |= std::uint64_t{1} << i;
  }
  if (std::find(masks.begin(), masks.end(), mask) == masks.end()) return false;
  // Certificate: with weights hi-on-S and lo-off-S, S must still be optimal.
  std::vector<Rational> star(pinned.size());
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    star[i] = (mask >> i) & 1 ? pinned[i].hi : pinned[i].lo;
  }
  Rational own = mask_sum(mask, star);
  for (std::uint64_t rival : masks) {
    if (mask_sum(rival, star) < own) return false;
  }
  return true;
}

// A query F is admissible iff after every revelation of F's true weights the
// residual instance still has a universally optimal solution; equivalently,
// iff no element f outside F can end up uncolored. For fixed f the residual
// thresholds  g(w_F) = inf / G(w_F) = sup over extreme settings of the other
// free elements  are monotone nondecreasing, 1-Lipschitz functions of the
// revealed weights, with g <= G. f goes uncolored at w_F iff
// G(w_F) > lo_f and g(w_F) < hi_f. If such a point exists anywhere in the
// revelation box, one exists on the lo->hi diagonal: otherwise the closed
// sets {G <= lo_f} (a down-set in t) and {g >= hi_f} (an up-set) would cover
// [0,1], forcing either an overlap (impossible: hi_f > lo_f and g <= G) or
// one of them to cover everything, which contradicts the off-diagonal
// witness by monotonicity. On the diagonal the failure set is an open
// interval whose endpoints are breakpoints of piecewise-linear curves with a
// computable denominator bound, so interval bisection decides emptiness
// exactly: a nonempty failure interval is wider than 1/Q^2 and is therefore
// hit before the bracket shrinks below that.
bool ExactFamily::is_admissible(const std::vector<std::size_t>& query) const {
  std::vector<char> in_query(inst_->size(), 0);
  for (std::size_t i : query) {
    if (i >= inst_->size()) {
      fail(ErrorCode::UnknownElement, "query element index out of range");
    }
    in_query[i] = 1;
  }
  std::vector<std::size_t> revealed_free, outside_free;
  for (std::size_t i = 0; i < inst_->size(); ++i) {
    if (inst_->intervals[i].is_trivial()) continue;
    (in_query[i] ? revealed_free : outside_free).push_back(i);
  }
  check_free_cap(revealed_free.size());
  check_free_cap(outside_free.size());

  std::vector<Rational> all_lo(inst_->size());
  for (std::size_t i = 0; i < inst_->size(); ++i) all_lo[i] = inst_->intervals[i].lo;
  if (!solve(all_lo, free_constraint()).value.is_finite()) {
    return false;  // no feasible set exists under any revelation
  }

  // Denominator bound for breakpoints along the diagonal: every endpoint
  // scaled by the common denominator is an integer, so slopes of the optimal
  // value curves are integer multiples of 1/common_den and crossings have
  // denominator at most 2 * common_den * (total diagonal drift).
  BigInt common_den = 1;
  for (const auto& iv : inst_->intervals) {
    common_den = boost::multiprecision::lcm(common_den, denominator(iv.lo));
    common_den = boost::multiprecision::lcm(common_den, denominator(iv.hi));
  }
  Rational drift = 0;
  for (std::size_t i : revealed_free) {
    drift += inst_->intervals[i].hi - inst_->intervals[i].lo;
  }
  BigInt q_bound = numerator(drift * Rational(common_den)) * 2;
  if (q_bound < 1) q_bound = 1;
  const Rational min_gap(BigInt(1), q_bound * q_bound);

  for (std::size_t f : outside_free) {
    const Rational& f_lo = inst_->intervals[f].lo;
    const Rational& f_hi = inst_->intervals[f].hi;
    std::vector<UncertaintyInterval> pinned = inst_->intervals;
    auto eval = [&](const Rational& t) {
      for (std::size_t i : revealed_free) {
        const auto& iv = inst_->intervals[i];
        Rational v = iv.lo + t * (iv.hi - iv.lo);
        pinned[i] = {v, v};
      }
      ThresholdPair p = thresholds_over(*this, f, pinned, BruteForceOptions{});
      return std::pair{p.t_plus, p.t_minus};
    };

    auto uncolored = [&](const std::pair<ExtendedWeight, ExtendedWeight>& gG) {
      return gG.second > ExtendedWeight(f_lo) && gG.first < ExtendedWeight(f_hi);
    };
    auto at0 = eval(0);
    if (uncolored(at0)) return false;
    if (at0.first >= ExtendedWeight(f_hi)) continue;  // blue at every revelation
    auto at1 = eval(1);
    if (uncolored(at1)) return false;
    if (at1.second <= ExtendedWeight(f_lo)) continue;  // red at every revelation
    // Here G(0) <= lo_f < G(1) and g(0) < hi_f <= g(1): the failure interval,
    // if any, lies strictly inside and the bracket invariant G(L) <= lo_f,
    // g(R) >= hi_f holds.
    Rational left = 0, right = 1;
    while (right - left >= min_gap) {
      Rational mid = (left + right) / 2;
      auto at = eval(mid);
      if (uncolored(at)) return false;
      if (at.second <= ExtendedWeight(f_lo)) {
        left = std::move(mid);
      } else {
        right = std::move(mid);  // g(mid) >= hi_f
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

SolveResult solve(const Instance& inst, const Realization& weights,
                  const SolveConstraint& con) {
  return ExactFamily(inst).solve(weights.values, con);
}

void for_each_extreme_realization(
    const Instance& inst, const std::map<ElementId, Rational>& fixed,
    const std::function<void(const Realization&)>& yield) {
  std::vector<Rational> base(inst.size());
  std::vector<char> is_fixed(inst.size(), 0);
  for (std::size_t i = 0; i < inst.size(); ++i) base[i] = inst.intervals[i].lo;
  for (const auto& [id, value] : fixed) {
    std::size_t i = inst.index_of(id);
    if (value < inst.intervals[i].lo || value > inst.intervals[i].hi) {
      fail(ErrorCode::InvalidRealization,
           "fixed weight of element '" + id + "' lies outside its interval", id);
    }
    base[i] = value;
    is_fixed[i] = 1;
  }
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!is_fixed[i] && !inst.intervals[i].is_trivial()) free_idx.push_back(i);
  }
  check_free_cap(free_idx.size());

  const std::size_t k = free_idx.size();
  Realization r;
  for (std::size_t code = 0; code < (std::size_t{1} << k); ++code) {
    r.values = base;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& iv = inst.intervals[free_idx[j]];
      r.values[free_idx[j]] = (code >> (k - 1 - j)) & 1 ? iv.hi : iv.lo;
    }
    yield(r);
  }
}

std::vector<Realization> enumerate_extreme_realizations(
    const Instance& inst, const std::map<ElementId, Rational>& fixed) {
  std::vector<Realization> out;
  for_each_extreme_realization(inst, fixed,
                               [&](const Realization& r) { out.push_back(r); });
  return out;
}

ExtendedWeight threshold_at(const Instance& inst, std::size_t element,
                            const std::vector<Rational>& weights) {
  if (weights.size() != inst.size()) {
    fail(ErrorCode::InvalidRealization, "expected one weight per element");
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i == element) continue;  // the element's own entry is ignored
    if (weights[i] < inst.intervals[i].lo || weights[i] > inst.intervals[i].hi) {
      fail(ErrorCode::InvalidRealization,
           "weight of element '" + inst.elements[i] + "' lies outside its interval",
           inst.elements[i]);
    }
  }
  return ExactFamily(inst).threshold_at(element, weights);
}

ThresholdPair brute_force_thresholds(const Instance& inst, std::size_t element,
                                     const BruteForceOptions& options) {
  return ExactFamily(inst).brute_force_thresholds(element, options);
}

ThresholdPair thresholds_via_solution_enumeration(const Instance& inst,
                                                  std::size_t element) {
  return ExactFamily(inst).thresholds_via_solution_enumeration(element);
}

std::optional<std::vector<std::size_t>> find_universally_optimal(const Instance& inst) {
  return ExactFamily(inst).find_universally_optimal();
}

bool is_admissible_semantic(const Instance& inst,
                            const std::vector<std::size_t>& query) {
  return ExactFamily(inst).is_admissible(query);
}

}  // namespace admiq::oracle
