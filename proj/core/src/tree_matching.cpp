#include "admiq/tree_matching.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "admiq/errors.hpp"

namespace admiq {
namespace {

using Adjacency = std::vector<std::vector<std::pair<int, std::size_t>>>;

Adjacency build_adjacency(const Graph& g) {
  Adjacency adj(static_cast<std::size_t>(g.vertex_count));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[static_cast<std::size_t>(g.edges[i].u)].emplace_back(g.edges[i].v, i);
    adj[static_cast<std::size_t>(g.edges[i].v)].emplace_back(g.edges[i].u, i);
  }
  return adj;
}

void check_tree(const Graph& g, const Adjacency& adj) {
  const int n = g.vertex_count;
  if (n == 0) {
    if (!g.edges.empty()) fail(ErrorCode::NotATree, "edges without vertices");
    return;
  }
  if (g.edges.size() != static_cast<std::size_t>(n) - 1) {
    fail(ErrorCode::NotATree, "a tree on " + std::to_string(n) +
                                  " vertices has exactly " +
                                  std::to_string(n - 1) + " edges");
  }
  for (const auto& e : g.edges) {
    if (e.u == e.v) fail(ErrorCode::NotATree, "self loops cannot occur in a tree");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(to)]) {
        seen[static_cast<std::size_t>(to)] = 1;
        stack.push_back(to);
      }
    }
  }
  for (char s : seen) {
    if (!s) fail(ErrorCode::NotATree, "the graph is disconnected");
  }
}

struct NodeRes {
  Rational unmatched{};              // subtree value with the root unmatched
  Rational best{};                   // unconstrained subtree value
  std::vector<std::size_t> unmatched_edges;
  std::vector<std::size_t> best_edges;
};

struct ForestMatching {
  Rational value{};
  std::vector<std::size_t> edges;
};

// Maximum-weight matching of the forest induced on the non-absent vertices.
// Blocked vertices stay in the forest but cannot be matched; banned_edge can
// be traversed but never enters the matching.
ForestMatching max_matching_forest(const Adjacency& adj,
                                   const std::vector<Rational>& weights,
                                   const std::vector<char>& absent,
                                   const std::vector<char>& blocked,
                                   std::size_t banned_edge) {
  const std::size_t n = adj.size();
  std::vector<NodeRes> res(n);
  std::vector<char> seen(n, 0);
  ForestMatching out;
  struct Frame {
    int v;
    std::size_t in_edge;
    bool expanded;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root] || absent[root]) continue;
    seen[root] = 1;
    std::vector<Frame> stack{{static_cast<int>(root), kNoElement, false}};
    while (!stack.empty()) {
      const int v = stack.back().v;
      const std::size_t in_edge = stack.back().in_edge;
      if (!stack.back().expanded) {
        stack.back().expanded = true;
        for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
          if (id == in_edge || absent[static_cast<std::size_t>(to)]) continue;
          seen[static_cast<std::size_t>(to)] = 1;
          stack.push_back({to, id, false});
        }
        continue;
      }
      stack.pop_back();
      NodeRes& me = res[static_cast<std::size_t>(v)];
      me = NodeRes{};
      for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
        if (id == in_edge || absent[static_cast<std::size_t>(to)]) continue;
        const NodeRes& child = res[static_cast<std::size_t>(to)];
        me.unmatched += child.best;
        me.unmatched_edges.insert(me.unmatched_edges.end(),
                                  child.best_edges.begin(),
                                  child.best_edges.end());
      }
      me.best = me.unmatched;
      me.best_edges = me.unmatched_edges;
      if (blocked[static_cast<std::size_t>(v)]) continue;
      for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
        if (id == in_edge || absent[static_cast<std::size_t>(to)]) continue;
        if (id == banned_edge || blocked[static_cast<std::size_t>(to)]) continue;
        const NodeRes& child = res[static_cast<std::size_t>(to)];
        Rational cand = me.unmatched - child.best + child.unmatched + weights[id];
        if (cand <= me.best) continue;
        me.best = std::move(cand);
        me.best_edges.clear();
        for (const auto& [other, other_id] : adj[static_cast<std::size_t>(v)]) {
          if (other_id == in_edge || absent[static_cast<std::size_t>(other)]) continue;
          const NodeRes& sibling = res[static_cast<std::size_t>(other)];
          const auto& part =
              other_id == id ? sibling.unmatched_edges : sibling.best_edges;
          me.best_edges.insert(me.best_edges.end(), part.begin(), part.end());
        }
        me.best_edges.push_back(id);
      }
    }
    out.value += res[root].best;
    out.edges.insert(out.edges.end(), res[root].best_edges.begin(),
                     res[root].best_edges.end());
  }
  return out;
}

// Per-vertex state of the guarded hanging-subtree matching. Walk gains count
// matched edges at -hi and unmatched ones at +lo; a walk may stop after a
// matched edge, or after an unmatched edge at an exposed vertex.
struct GuardNode {
  bool can_cover = false;    // matched to a child, every at-vertex walk capped
  bool can_expose = false;   // unmatched inside the subtree, children settled
  bool walk_finite = false;  // an unmatched-first walk below exists
  Rational covered_walk;     // lowest matched-first walk gain when covered
  Rational exposed_walk;     // best unmatched-first walk gain when unmatched
  int match_child = -1;
  std::size_t match_edge = kNoElement;
};

// Tail a settled child adds to walks entering it over an unmatched edge, or
// nullopt when the child can only be matched by its parent. A covered child
// continues into its matched edge (gain at most zero by construction); an
// exposed child ends the walk at exactly zero, and staying exposed is only
// sound when no walk below it gains.
std::optional<Rational> settled_tail(const GuardNode& node) {
  if (node.can_cover) return node.covered_walk;
  if (node.can_expose &&
      (!node.walk_finite || node.exposed_walk <= Rational(0))) {
    return Rational(0);
  }
  return std::nullopt;
}

// Matching of one subtree hanging off a candidate path, rooted at the
// subtree vertex adjacent to the path. Both certificate matchings keep it,
// so it must stay optimal inside the subtree under its own realization (its
// edges at hi, the rest at lo), and among such matchings the chosen one
// minimizes the best continuation an alternating walk crossing in from the
// path can pick up at the root: a covered root continues with a gain capped
// at zero, an exposed root stops at exactly zero, so covering the root never
// hurts and deeply negative continuations validate every certificate any
// other self-consistent choice would. A plain hi-weight matching is not
// enough: ties between hi-weight matchings differ in their continuations,
// and the wrong pick hides valid certificates.
void guarded_hanging_matching(const Adjacency& adj,
                              const std::vector<UncertaintyInterval>& intervals,
                              const std::vector<char>& on_path, int root,
                              std::vector<char>& in_hanging) {
  std::vector<GuardNode> nodes(adj.size());
  struct Frame {
    int v;
    int parent;
    bool expanded;
  };
  std::vector<Frame> stack{{root, -1, false}};
  while (!stack.empty()) {
    const int v = stack.back().v;
    const int parent = stack.back().parent;
    if (!stack.back().expanded) {
      stack.back().expanded = true;
      for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
        if (to == parent || on_path[static_cast<std::size_t>(to)]) continue;
        stack.push_back({to, v, false});
      }
      continue;
    }
    stack.pop_back();
    GuardNode& me = nodes[static_cast<std::size_t>(v)];
    me = GuardNode{};

    // Arms of walks through v into settled children; the two largest decide
    // the pair condition below. Children that cannot settle must be matched
    // by v itself.
    int unsettled = 0;
    int unsettled_child = -1;
    bool arm_finite = false;
    Rational arm_best, arm_second;
    int arm_best_child = -1;
    bool arm_second_finite = false;
    for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
      if (to == parent || on_path[static_cast<std::size_t>(to)]) continue;
      const std::optional<Rational> tail =
          settled_tail(nodes[static_cast<std::size_t>(to)]);
      if (!tail) {
        ++unsettled;
        unsettled_child = to;
        continue;
      }
      Rational arm = intervals[id].lo + *tail;
      if (!arm_finite || arm > arm_best) {
        if (arm_finite) {
          arm_second = arm_best;
          arm_second_finite = true;
        }
        arm_best = std::move(arm);
        arm_best_child = to;
        arm_finite = true;
      } else if (!arm_second_finite || arm > arm_second) {
        arm_second = std::move(arm);
        arm_second_finite = true;
      }
    }

    if (unsettled == 0) {
      me.can_expose = true;
      me.walk_finite = arm_finite;
      if (arm_finite) me.exposed_walk = arm_best;
    }

    // Matching v to child j keeps the subtree self-consistent when the walk
    // through the matched edge gains nothing on its own and nothing combined
    // with the best arm into another child.
    for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
      if (to == parent || on_path[static_cast<std::size_t>(to)]) continue;
      const GuardNode& child = nodes[static_cast<std::size_t>(to)];
      if (!child.can_expose) continue;
      if (unsettled > 1 || (unsettled == 1 && to != unsettled_child)) continue;
      Rational continuation =
          child.walk_finite ? std::max(Rational(0), child.exposed_walk)
                            : Rational(0);
      Rational walk = continuation - intervals[id].hi;
      if (walk > Rational(0)) continue;
      const bool rest_finite = to == arm_best_child ? arm_second_finite : arm_finite;
      const Rational& rest = to == arm_best_child ? arm_second : arm_best;
      if (rest_finite && walk + rest > Rational(0)) continue;
      if (!me.can_cover || walk < me.covered_walk) {
        me.can_cover = true;
        me.covered_walk = std::move(walk);
        me.match_child = to;
        me.match_edge = id;
      }
    }
  }

  const GuardNode& top = nodes[static_cast<std::size_t>(root)];
  const bool expose_ok =
      top.can_expose && (!top.walk_finite || top.exposed_walk <= Rational(0));
  if (!top.can_cover && !expose_ok) {
    fail(ErrorCode::OracleFailure,
         "no self-consistent matching for a hanging subtree");
  }

  struct Emit {
    int v;
    int parent;
    bool covered;  // materialize the matched-to-a-child state
  };
  std::vector<Emit> emit{{root, -1, top.can_cover}};
  while (!emit.empty()) {
    const Emit cur = emit.back();
    emit.pop_back();
    const GuardNode& node = nodes[static_cast<std::size_t>(cur.v)];
    if (cur.covered) in_hanging[node.match_edge] = 1;
    for (const auto& [to, id] : adj[static_cast<std::size_t>(cur.v)]) {
      if (to == cur.parent || on_path[static_cast<std::size_t>(to)]) continue;
      const bool matched_here = cur.covered && to == node.match_child;
      const bool child_covered =
          !matched_here && nodes[static_cast<std::size_t>(to)].can_cover;
      emit.push_back({to, cur.v, child_covered});
    }
  }
}

// Parent pointers toward the fixed edge: both endpoints become roots of
// their half of the tree.
struct SplitRooting {
  std::vector<int> parent;
  std::vector<std::size_t> parent_edge;
  std::vector<int> depth;
  std::vector<char> left;  // on the side of the edge's first endpoint
};

SplitRooting root_toward_edge(const Graph& g, const Adjacency& adj,
                              std::size_t element) {
  const std::size_t n = static_cast<std::size_t>(g.vertex_count);
  SplitRooting out{std::vector<int>(n, -1),
                   std::vector<std::size_t>(n, kNoElement),
                   std::vector<int>(n, 0), std::vector<char>(n, 0)};
  const auto walk = [&](int root, bool mark_left) {
    std::vector<int> stack{root};
    if (mark_left) out.left[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
        if (id == element || to == out.parent[static_cast<std::size_t>(v)]) continue;
        out.parent[static_cast<std::size_t>(to)] = v;
        out.parent_edge[static_cast<std::size_t>(to)] = id;
        out.depth[static_cast<std::size_t>(to)] =
            out.depth[static_cast<std::size_t>(v)] + 1;
        if (mark_left) out.left[static_cast<std::size_t>(to)] = 1;
        stack.push_back(to);
      }
    }
  };
  walk(g.edges[element].u, true);
  walk(g.edges[element].v, false);
  return out;
}

void check_interval_count(const Graph& g,
                          const std::vector<UncertaintyInterval>& intervals) {
  if (intervals.size() != g.edges.size()) {
    fail(ErrorCode::InvalidRealization, "expected one interval per edge");
  }
}

void check_element(const Graph& g, std::size_t element) {
  if (element >= g.edges.size()) {
    fail(ErrorCode::EdgeNotInTree, "the fixed element is not an edge of the tree");
  }
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count) {
    fail(ErrorCode::UnknownVertex, "vertex out of range");
  }
}

}  // namespace

SolveResult max_matching_tree(const Graph& g,
                              const std::vector<Rational>& weights,
                              const SolveConstraint& con) {
  if (weights.size() != g.edges.size()) {
    fail(ErrorCode::InvalidRealization, "expected one weight per edge");
  }
  const Adjacency adj = build_adjacency(g);
  check_tree(g, adj);
  if (con.kind != SolveConstraint::Kind::Free && con.element >= g.edges.size()) {
    fail(ErrorCode::UnknownElement, "constrained edge index out of range");
  }
  const std::size_t n = static_cast<std::size_t>(g.vertex_count);
  std::vector<char> absent(n, 0);
  std::vector<char> blocked(n, 0);
  std::size_t banned = kNoElement;
  if (con.kind == SolveConstraint::Kind::Exclude) banned = con.element;
  if (con.kind == SolveConstraint::Kind::Include) {
    blocked[static_cast<std::size_t>(g.edges[con.element].u)] = 1;
    blocked[static_cast<std::size_t>(g.edges[con.element].v)] = 1;
  }
  ForestMatching m = max_matching_forest(adj, weights, absent, blocked, banned);
  if (con.kind == SolveConstraint::Kind::Include) {
    m.value += weights[con.element];
    m.edges.push_back(con.element);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return {ExtendedWeight(std::move(m.value)), std::move(m.edges)};
}

TreeMatchingThresholds tree_thresholds_fixed_edge(const Instance& inst,
                                                  std::size_t element) {
  const auto* family = std::get_if<TreeMatchingFamily>(&inst.family);
  if (family == nullptr) {
    fail(ErrorCode::FamilyShapeMismatch, "instance family is not TreeMatching");
  }
  if (inst.objective != Objective::Max) {
    fail(ErrorCode::FamilyShapeMismatch,
         "tree matching thresholds are stated for a Max objective; negate "
         "minimization instances first");
  }
  const Graph& g = family->graph;
  check_element(g, element);
  const Adjacency adj = build_adjacency(g);
  check_tree(g, adj);
  const std::size_t m = g.edges.size();
  const SplitRooting rooting = root_toward_edge(g, adj, element);

  // Climb from v to its side's root endpoint; edges come out v-first.
  const auto climb = [&](int v) {
    std::vector<std::size_t> edges;
    int cur = v;
    while (rooting.parent[static_cast<std::size_t>(cur)] >= 0) {
      edges.push_back(rooting.parent_edge[static_cast<std::size_t>(cur)]);
      cur = rooting.parent[static_cast<std::size_t>(cur)];
    }
    return edges;
  };

  bool have_a = false;
  bool have_b = false;
  Rational best_a;
  Rational best_b;
  AlternatingPathCertificate cert_a;
  AlternatingPathCertificate cert_b;

  for (int s = 0; s < g.vertex_count; ++s) {
    if (!rooting.left[static_cast<std::size_t>(s)]) continue;
    const std::vector<std::size_t> left_edges = climb(s);
    for (int t = 0; t < g.vertex_count; ++t) {
      if (rooting.left[static_cast<std::size_t>(t)]) continue;
      const std::vector<std::size_t> right_edges = climb(t);

      // Path edges from s to t with their distance from the fixed edge;
      // even distances (the fixed edge included) form the inclusion side of
      // the alternation, odd distances the exclusion side.
      std::vector<std::size_t> path_edges = left_edges;
      path_edges.push_back(element);
      path_edges.insert(path_edges.end(), right_edges.rbegin(),
                        right_edges.rend());
      std::vector<char> in_plus(m, 0);
      std::vector<char> in_minus(m, 0);
      in_plus[element] = 1;
      for (std::size_t i = 0; i < left_edges.size(); ++i) {
        const std::size_t offset = left_edges.size() - i;
        (offset % 2 == 0 ? in_plus : in_minus)[left_edges[i]] = 1;
      }
      for (std::size_t i = 0; i < right_edges.size(); ++i) {
        const std::size_t offset = right_edges.size() - i;
        (offset % 2 == 0 ? in_plus : in_minus)[right_edges[i]] = 1;
      }

      std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count), 0);
      for (std::size_t id : path_edges) {
        on_path[static_cast<std::size_t>(g.edges[id].u)] = 1;
        on_path[static_cast<std::size_t>(g.edges[id].v)] = 1;
      }

      // Both matchings keep one guarded matching per hanging subtree; the
      // roots are the off-path neighbors of path vertices.
      std::vector<char> in_hanging(m, 0);
      for (int p = 0; p < g.vertex_count; ++p) {
        if (!on_path[static_cast<std::size_t>(p)]) continue;
        for (const auto& [to, id] : adj[static_cast<std::size_t>(p)]) {
          if (on_path[static_cast<std::size_t>(to)]) continue;
          guarded_hanging_matching(adj, inst.intervals, on_path, to, in_hanging);
        }
      }

      const auto evaluate = [&](bool hi_on_plus) {
        std::vector<Rational> w(m);
        for (std::size_t i = 0; i < m; ++i) {
          const bool hi = in_hanging[i] || (hi_on_plus ? (in_plus[i] && i != element)
                                                       : in_minus[i] != 0);
          w[i] = hi ? inst.intervals[i].hi : inst.intervals[i].lo;
        }
        Rational value_plus;
        Rational value_minus;
        for (std::size_t i = 0; i < m; ++i) {
          if (in_plus[i] || in_hanging[i]) value_plus += w[i];
          if (in_minus[i] || in_hanging[i]) value_minus += w[i];
        }
        const SolveResult with_e = max_matching_tree(g, w, include_element(element));
        const SolveResult without_e = max_matching_tree(g, w, exclude_element(element));
        const bool valid = with_e.value == ExtendedWeight(value_plus) &&
                           without_e.value == ExtendedWeight(value_minus);
        Rational difference = value_minus - (value_plus - w[element]);
        return std::tuple<bool, Rational, std::vector<Rational>>(
            valid, std::move(difference), std::move(w));
      };

      const auto make_certificate = [&](std::vector<Rational> w) {
        AlternatingPathCertificate cert;
        cert.s = s;
        cert.t = t;
        cert.path_edges = path_edges;
        for (std::size_t i = 0; i < m; ++i) {
          if (in_plus[i] || in_hanging[i]) cert.m_plus.push_back(i);
          if (in_minus[i] || in_hanging[i]) cert.m_minus.push_back(i);
        }
        cert.realization = std::move(w);
        return cert;
      };

      auto [valid_a, diff_a, w_a] = evaluate(true);
      if (valid_a && (!have_a || diff_a < best_a)) {
        have_a = true;
        best_a = diff_a;
        cert_a = make_certificate(std::move(w_a));
      }
      auto [valid_b, diff_b, w_b] = evaluate(false);
      if (valid_b && (!have_b || diff_b > best_b)) {
        have_b = true;
        best_b = diff_b;
        cert_b = make_certificate(std::move(w_b));
      }
    }
  }

  if (!have_a || !have_b) {
    fail(ErrorCode::OracleFailure,
         "no valid alternating path certificate found for the fixed edge");
  }
  TreeMatchingThresholds out{
      best_a, best_b,
      make_threshold_pair(ExtendedWeight(-best_b), ExtendedWeight(-best_a)),
      std::move(cert_a), std::move(cert_b)};
  return out;
}

HangingSubtreeTables hanging_subtree_tables(
    const Graph& g, const std::vector<UncertaintyInterval>& intervals,
    std::size_t element) {
  check_interval_count(g, intervals);
  check_element(g, element);
  const Adjacency adj = build_adjacency(g);
  check_tree(g, adj);
  const std::size_t n = static_cast<std::size_t>(g.vertex_count);
  SplitRooting rooting = root_toward_edge(g, adj, element);
  HangingSubtreeTables out{std::move(rooting.parent),
                           std::move(rooting.parent_edge),
                           std::vector<Rational>(n), std::vector<Rational>(n)};

  // Fold deepest-first; every child is final before its parent.
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rooting.depth[a] > rooting.depth[b];
  });
  for (std::size_t v : order) {
    Rational root_free;
    Rational gain;  // best improvement from matching v with one child
    for (const auto& [to, id] : adj[v]) {
      if (id == element || out.parent[v] == to) continue;
      const std::size_t c = static_cast<std::size_t>(to);
      root_free += out.best[c];
      Rational cand = intervals[id].hi + out.root_free[c] - out.best[c];
      if (cand > gain) gain = std::move(cand);
    }
    out.root_free[v] = root_free;
    out.best[v] = std::move(root_free) + gain;
  }
  return out;
}

Rational alternating_path_sum(const Graph& g,
                              const std::vector<UncertaintyInterval>& intervals,
                              std::size_t element, int u, int v) {
  check_interval_count(g, intervals);
  check_element(g, element);
  const Adjacency adj = build_adjacency(g);
  check_tree(g, adj);
  check_vertex(g, u);
  check_vertex(g, v);
  if (u == v) return Rational();
  const SplitRooting rooting = root_toward_edge(g, adj, element);

  // Edges from `from` up to ancestor `to`, or nothing if `to` is not hit.
  const auto climb_to = [&](int from, int to) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> edges;
    int cur = from;
    while (cur != to) {
      if (rooting.parent[static_cast<std::size_t>(cur)] < 0) return std::nullopt;
      edges.push_back(rooting.parent_edge[static_cast<std::size_t>(cur)]);
      cur = rooting.parent[static_cast<std::size_t>(cur)];
    }
    return edges;
  };

  // Orient the path to start at u regardless of which endpoint is deeper.
  std::vector<std::size_t> edges;
  if (auto up = climb_to(u, v)) {
    edges = std::move(*up);
  } else if (auto down = climb_to(v, u)) {
    edges.assign(down->rbegin(), down->rend());
  } else {
    fail(ErrorCode::UnknownVertex,
         "neither endpoint lies on the other's path toward the fixed edge");
  }

  Rational sum;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t id = edges[i];
    // Edges strictly between this edge and the fixed edge along the climb.
    const int endpoint_depth = std::min(
        rooting.depth[static_cast<std::size_t>(g.edges[id].u)],
        rooting.depth[static_cast<std::size_t>(g.edges[id].v)]);
    const bool odd_from_edge = endpoint_depth % 2 == 1;
    const Rational& base = odd_from_edge ? intervals[id].hi : intervals[id].lo;
    if (i % 2 == 0) {
      sum -= base;
    } else {
      sum += base;
    }
  }
  return sum;
}

ExtendedWeight best_alternating_path(
    const Graph& g, const std::vector<UncertaintyInterval>& intervals,
    std::size_t element, int u, int skip_child) {
  check_interval_count(g, intervals);
  check_element(g, element);
  const Adjacency adj = build_adjacency(g);
  check_tree(g, adj);
  check_vertex(g, u);
  const std::size_t n = static_cast<std::size_t>(g.vertex_count);
  const SplitRooting rooting = root_toward_edge(g, adj, element);
  if (skip_child != -1) {
    check_vertex(g, skip_child);
    if (rooting.parent[static_cast<std::size_t>(skip_child)] != u) {
      fail(ErrorCode::UnknownVertex,
           "skip_child is not a direct descendant of the start vertex");
    }
  }

  // Vertices of u's hanging subtree minus the skipped branch.
  std::vector<char> absent(n, 1);
  std::vector<int> stack{u};
  absent[static_cast<std::size_t>(u)] = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [to, id] : adj[static_cast<std::size_t>(v)]) {
      if (id == element) continue;
      if (rooting.parent[static_cast<std::size_t>(to)] != v) continue;
      if (v == u && to == skip_child) continue;
      absent[static_cast<std::size_t>(to)] = 0;
      stack.push_back(to);
    }
  }

  std::vector<Rational> his(g.edges.size());
  for (std::size_t i = 0; i < his.size(); ++i) his[i] = intervals[i].hi;
  const std::vector<char> none(n, 0);
  const ForestMatching reference =
      max_matching_forest(adj, his, absent, none, element);
  std::vector<char> matched(g.edges.size(), 0);
  for (std::size_t id : reference.edges) matched[id] = 1;

  // Deepest-first fold of the best strictly-alternating descent per phase.
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < n; ++v) {
    if (!absent[v]) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rooting.depth[a] > rooting.depth[b];
  });
  std::vector<ExtendedWeight> via_matched(n, ExtendedWeight::minus_infinity());
  std::vector<ExtendedWeight> via_unmatched(n, ExtendedWeight::minus_infinity());
  for (std::size_t v : order) {
    for (const auto& [to, id] : adj[v]) {
      if (id == element || absent[static_cast<std::size_t>(to)]) continue;
      if (rooting.parent[static_cast<std::size_t>(to)] != static_cast<int>(v)) continue;
      const std::size_t c = static_cast<std::size_t>(to);
      if (matched[id]) {
        Rational value = -intervals[id].hi;
        if (via_unmatched[c].is_finite() && via_unmatched[c].finite_value() > 0) {
          value += via_unmatched[c].finite_value();
        }
        via_matched[v] = max(via_matched[v], ExtendedWeight(std::move(value)));
      } else {
        Rational value = intervals[id].lo;
        if (via_matched[c].is_finite() && via_matched[c].finite_value() > 0) {
          value += via_matched[c].finite_value();
        }
        via_unmatched[v] = max(via_unmatched[v], ExtendedWeight(std::move(value)));
      }
    }
  }
  return max(via_matched[static_cast<std::size_t>(u)],
             via_unmatched[static_cast<std::size_t>(u)]);
}

}  // namespace admiq
