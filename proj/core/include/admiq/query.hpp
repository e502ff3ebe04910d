#pragma once

#include <cstddef>
#include <functional>
#include <unordered_map>
#include <vector>

#include "admiq/rational.hpp"
#include "admiq/types.hpp"

namespace admiq {

// Result of query planning: what to query, at which total cost, and the
// colors the plan was derived from. query always holds every uncolored
// non-trivial element; anything beyond that has negative query cost.
struct QueryPlan {
  std::vector<std::size_t> query;  // ascending element indices
  Rational cost;
  std::vector<ElementColor> colors;
};

// classify applied elementwise. Throws Error{MissingThreshold} unless there
// is exactly one pair per element.
std::vector<ElementColor> color_all(const Instance& inst,
                                    const std::vector<ThresholdPair>& thresholds);

// The minimum-cost admissible query: every uncolored non-trivial element,
// plus every element of negative cost (querying those can only reduce the
// total). Throws Error{MissingThreshold} on a color-count mismatch.
QueryPlan minimum_admissible_query(const Instance& inst,
                                   const std::vector<ElementColor>& colors);

// True exactly when the query covers every uncolored non-trivial element;
// covering them is forced, and any superset stays admissible.
bool is_admissible_via_thresholds(const Instance& inst,
                                  const std::vector<ElementColor>& colors,
                                  const std::vector<std::size_t>& query);

// One exact solve after the reveal: revealed values on the queried
// elements, the exact value on trivial ones, and a big-M penalty forcing
// blue elements in and red ones out. The returned set is optimal under
// every realization of the unqueried intervals. Requires a Min objective.
// revealed must cover the plan's query set exactly, with values inside the
// intervals; throws Error{RevealMissing}, Error{RevealUnexpected},
// Error{RevealOutOfInterval}, and Error{NoFeasibleSet} when the family is
// empty.
std::vector<std::size_t> resolve(
    const Instance& inst, const std::vector<ElementColor>& colors,
    const std::unordered_map<std::size_t, Rational>& revealed);

// One threshold located by binary search, or the sign of an infinite one.
// For Bracket, lo <= value <= hi and hi - lo is at most the requested
// precision; iterations counts the bisection steps taken.
struct ThresholdBracket {
  enum class Kind { PlusInfinity, MinusInfinity, Bracket };
  Kind kind = Kind::Bracket;
  Rational lo;
  Rational hi;
  std::size_t iterations = 0;
};

struct ApproxThresholds {
  ThresholdBracket plus;
  ThresholdBracket minus;
};

// Answers "is this query admissible for this instance?". The instance
// passed in may carry intervals outside the original ones.
using AdmissibilityOracle =
    std::function<bool(const Instance&, const std::vector<std::size_t>&)>;

// Approximates both thresholds of one element to additive precision delta
// using only admissibility answers. Infinite thresholds are detected first
// by two exact solves with the element's weight forced far below / above
// every other total. The finite case brackets each threshold inside
// [-K, K], K the sum of |lo|+|hi| over the other elements, by asking
// whether revealing everything else stays admissible when the element's
// interval is replaced by [-K-1, alpha] (below-threshold probe) resp.
// [alpha, K+1]; each answer halves the bracket, so at most
// ceil(log2(2K/delta)) steps. Requires a Min objective and delta > 0.
ApproxThresholds approximate_threshold_via_queries(
    const Instance& inst, std::size_t element, const Rational& delta,
    const AdmissibilityOracle& oracle);

// The reference oracle: exact semantic admissibility by brute force.
AdmissibilityOracle make_semantic_admissibility_oracle();

// Admissibility decided through thresholds computed by the given function:
// color the elements and test query coverage. Cross-validates a per-family
// threshold algorithm against the semantic route.
AdmissibilityOracle make_threshold_admissibility_oracle(
    std::function<std::vector<ThresholdPair>(const Instance&)> thresholds);

}  // namespace admiq
