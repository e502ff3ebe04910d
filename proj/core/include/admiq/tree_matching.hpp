#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "admiq/rational.hpp"
#include "admiq/solve.hpp"
#include "admiq/types.hpp"

namespace admiq {

// Witness for one threshold value of a fixed tree edge e. The s-t path runs
// through e; path edges alternate between m_plus and m_minus starting with
// e in m_plus. Off the path, both matchings share the hanging-subtree
// matchings, so m_plus symmetric-difference m_minus is exactly path_edges.
// realization is the weight vector the witness is evaluated under: for an
// inclusion certificate every m_plus edge except e sits at hi and everything
// else at lo; for an exclusion certificate m_minus sits at hi instead.
struct AlternatingPathCertificate {
  int s = -1;
  int t = -1;
  std::vector<std::size_t> path_edges;  // in order from s to t, contains e
  std::vector<std::size_t> m_plus;      // ascending element indices
  std::vector<std::size_t> m_minus;     // ascending element indices
  std::vector<Rational> realization;    // one weight per element
};

// Max-convention thresholds of a fixed edge e, plus the standard
// minimization-convention pair of the negated instance.
//   * hi_e < include_threshold  => e in no maximum matching, ever;
//   * lo_e > exclude_threshold  => e in every maximum matching, ever;
//   * min_convention = (-exclude_threshold, -include_threshold).
struct TreeMatchingThresholds {
  Rational include_threshold;
  Rational exclude_threshold;
  ThresholdPair min_convention;
  std::optional<AlternatingPathCertificate> include_certificate;
  std::optional<AlternatingPathCertificate> exclude_certificate;
};

// Maximum-weight matching on a tree (not necessarily perfect), optionally
// forcing one edge in or out. Value and an ascending witness; linear time.
// Include blocks both endpoints for further matching, which is always
// feasible for a single forced edge. Throws Error{NotATree} if the graph is
// not a tree, Error{InvalidRealization} on a weight-count mismatch and
// Error{UnknownElement} on a constrained edge out of range.
SolveResult max_matching_tree(const Graph& g,
                              const std::vector<Rational>& weights,
                              const SolveConstraint& con = free_constraint());

// Both thresholds of the fixed edge by enumerating s-t paths through it.
// For each candidate path the two matchings are reconstructed from the
// alternation rule plus one shared matching per hanging subtree. That
// matching must stay optimal in its subtree under its own edges at hi and
// the rest at lo, and among such matchings the one chosen minimizes the best
// alternating continuation a walk crossing in from the path finds at the
// subtree root; hi-weight matchings alone are not enough, since ties between
// them differ in their continuations and the wrong pick hides valid
// certificates. The pair is kept only if two constrained max_matching_tree
// runs confirm each matching is optimal on its side under the certificate
// realization. The include threshold is the minimum of w(m_minus) -
// w(m_plus - e) over valid certificates, the exclude threshold the maximum
// under the dual weight rule. Quadratically many candidates, linear-size
// checks each.
// Requires a TreeMatching family with a Max objective; throws
// Error{FamilyShapeMismatch} otherwise, Error{NotATree} if the graph is not
// a tree and Error{EdgeNotInTree} on an element index out of range.
TreeMatchingThresholds tree_thresholds_fixed_edge(const Instance& inst,
                                                  std::size_t element);

// Hi-weight matching tables of the subtrees hanging away from a fixed edge.
// Removing the edge and rooting both halves at its endpoints assigns every
// vertex u the subtree of vertices whose path to the edge passes through u.
// best[u] is the maximum hi-weight matching value inside that subtree;
// root_free[u] restricts u itself to stay unmatched (it never decreases by
// matching u: best[u] >= root_free[u]). Such a matching stays optimal under
// the self-referential weight rule "its own edges at hi, the rest at lo",
// because any rival matching weighs no more at hi than this one.
struct HangingSubtreeTables {
  std::vector<int> parent;               // one step toward the edge; -1 at
                                         // the two endpoints
  std::vector<std::size_t> parent_edge;  // kNoElement at the two endpoints
  std::vector<Rational> best;
  std::vector<Rational> root_free;
};

HangingSubtreeTables hanging_subtree_tables(
    const Graph& g, const std::vector<UncertaintyInterval>& intervals,
    std::size_t element);

// Signed alternating sum over the u-v path, where one endpoint lies on the
// other's path toward the fixed edge: path edges at odd distance from the
// fixed edge contribute hi, at even distance lo; the sign starts negative at
// u and alternates along the path. Swapping u and v keeps the value when
// they are an odd number of edges apart and flips it when even. Zero when
// u == v. Throws Error{UnknownVertex} when an endpoint is out of range or
// neither endpoint lies on the other's path toward the fixed edge,
// Error{EdgeNotInTree} on an element index out of range and Error{NotATree}
// on a non-tree graph.
Rational alternating_path_sum(const Graph& g,
                              const std::vector<UncertaintyInterval>& intervals,
                              std::size_t element, int u, int v);

// Best alternating walk away from u inside u's hanging subtree, skipping the
// branch through direct descendant skip_child (pass -1 to keep all
// branches). The reference matching is the hi-weight matching of the
// remaining forest; path edges alternate in and out of it (either phase may
// start), weighing matched edges -hi and unmatched ones +lo. At least one
// edge; -infinity when u has no usable edge. Errors as in
// alternating_path_sum, plus Error{UnknownVertex} when skip_child is not a
// direct descendant of u.
ExtendedWeight best_alternating_path(
    const Graph& g, const std::vector<UncertaintyInterval>& intervals,
    std::size_t element, int u, int skip_child);

}  // namespace admiq
