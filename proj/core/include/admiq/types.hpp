#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "admiq/errors.hpp"
#include "admiq/rational.hpp"

namespace admiq {

using ElementId = std::string;

// Closed interval [lo, hi] of possible weights for one element.
struct UncertaintyInterval {
  Rational lo;
  Rational hi;
  bool is_trivial() const { return lo == hi; }
};

// Shared graph shape for the graph-backed families. Edge k corresponds to
// instance element k; vertices are 0-based.
struct Graph {
  struct Endpoints {
    int u = -1;
    int v = -1;
  };
  int vertex_count = 0;
  std::vector<Endpoints> edges;
};

struct MstFamily {
  Graph graph;
};

struct StPathFamily {
  Graph graph;
  int source = -1;
  int target = -1;
  bool directed = false;
};

struct TreeMatchingFamily {
  Graph graph;
};

struct BipartitePerfectMatchingFamily {
  Graph graph;
  std::vector<char> left;  // per-vertex side flag; right side is the complement
};

struct UniformMatroidFamily {
  int rank = 0;
  int size = 0;  // must equal the instance element count
};

struct GraphicMatroidFamily {
  Graph graph;
};

using FamilyDescriptor =
    std::variant<MstFamily, StPathFamily, TreeMatchingFamily,
                 BipartitePerfectMatchingFamily, UniformMatroidFamily,
                 GraphicMatroidFamily>;

enum class Objective { Min, Max };

// One optimization instance under interval uncertainty: a feasible-set family
// over named elements, an uncertainty interval and a query cost per element.
// Immutable after validate_instance; iteration order is declaration order.
struct Instance {
  std::vector<ElementId> elements;
  std::vector<UncertaintyInterval> intervals;
  std::vector<Rational> costs;
  FamilyDescriptor family;
  Objective objective = Objective::Min;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> find(std::string_view id) const;
  // Like find but throws Error{UnknownElement}.
  std::size_t index_of(std::string_view id) const;
  // Graph of the family, or nullptr for matroids without one.
  const Graph* graph() const;

  // Filled by validate_instance for O(1) id lookup.
  std::unordered_map<std::string, std::size_t> index;
};

// Checks structural invariants (one interval/cost per element, lo <= hi,
// endpoints in range, no self loops, family shape constraints, unique ids)
// and returns the instance with its id index built. Throws Error on failure.
Instance validate_instance(Instance inst);

// Maps a Max instance to the equivalent Min instance: intervals [lo,hi]
// become [-hi,-lo], costs stay. Throws Error{AlreadyMin} on Min input.
// Involution partner of negate_for_minimization below.
Instance negate_for_maximization(const Instance& inst);

// Inverse direction, for presenting Min results of an internally negated
// instance back in Max terms.
Instance negate_for_minimization(const Instance& inst);

// One weight per element, each inside its interval.
struct Realization {
  std::vector<Rational> values;
};

// Validates bounds; throws Error{InvalidRealization}.
Realization make_realization(const Instance& inst, std::vector<Rational> values);

// Minimization convention. t_plus <= t_minus always holds:
//   * weight below t_plus  => element in every optimal solution,
//   * weight above t_minus => element in no optimal solution.
// (+inf,+inf) marks a mandatory element, (-inf,-inf) a forbidden one.
struct ThresholdPair {
  ExtendedWeight t_plus;
  ExtendedWeight t_minus;
};

// Asserts t_plus <= t_minus (Error{OracleFailure} otherwise -- a violated
// pair is always an implementation bug, never valid input).
ThresholdPair make_threshold_pair(ExtendedWeight t_plus, ExtendedWeight t_minus);

enum class ElementColor { Blue, Red, Trivial, Uncolored };

const char* to_string(ElementColor color);

// Blue: hi <= t_plus (always safely includable). Red: t_minus <= lo (always
// safely excludable). Ties classify as colored; a nontrivial interval can
// never be both since t_plus <= t_minus.
ElementColor classify(const UncertaintyInterval& interval,
                      const ThresholdPair& thresholds);

}  // namespace admiq
