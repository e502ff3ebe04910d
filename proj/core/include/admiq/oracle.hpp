#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "admiq/solve.hpp"
#include "admiq/types.hpp"

// Reference implementations that certify the fast per-family algorithms.
// Everything here is exact and deliberately simple; caps below are hard
// errors, never silent approximations.
namespace admiq::oracle {

// Extreme-realization enumeration stops at 2^20 cases.
inline constexpr int kMaxFreeIntervals = 20;
// Feasible-set enumeration stops at 10^6 sets.
inline constexpr std::size_t kMaxFeasibleSets = 1'000'000;
// Spanning-set enumeration is certified only up to this many vertices.
inline constexpr int kMaxSpanningVertices = 8;
// Perfect-matching enumeration is certified only up to this many vertices.
inline constexpr int kMaxPerfectMatchingVertices = 24;

struct BruteForceOptions {
  // The realization scan normally runs on overflow-checked scaled int64
  // weights when every value fits, falling back to rationals otherwise.
  // Tests disable the fast path to compare both routes.
  bool allow_scaled_fast_path = true;
};

// Exact solver for one instance with cached feasible-set enumeration.
// Construction requires a Min objective (maximization is handled by
// negation at the call site). The instance must outlive the engine.
class ExactFamily {
 public:
  explicit ExactFamily(const Instance& inst);

  const Instance& instance() const { return *inst_; }

  // Exact constrained optimum under explicit per-element weights.
  // Backends: spanning-set enumeration (Mst, <= 8 vertices; Kruskal for
  // Free at any size), simple-path enumeration by DFS (StPath, exact for
  // Include on general digraphs), subtree dynamic program (TreeMatching,
  // any size), recursive perfect-matching enumeration with an
  // augmenting-path assignment cross-check (BipartitePerfectMatching),
  // greedy (matroids).
  SolveResult solve(const std::vector<Rational>& weights,
                    const SolveConstraint& con) const;

  // T_e(w) = OPT without e minus OPT with e forced (the forced run reads
  // the weight of e as 0). +inf when e is mandatory, -inf when forbidden;
  // Error{NoFeasibleSet} when the family is empty either way.
  ExtendedWeight threshold_at(std::size_t element,
                              const std::vector<Rational>& weights) const;

  // min / max of threshold_at over all extreme realizations of the other
  // elements' intervals.
  ThresholdPair brute_force_thresholds(std::size_t element,
                                       const BruteForceOptions& options = {}) const;

  // Same pair via the dual route: scan feasible sets S avoiding (resp.
  // containing) e, keep S only if optimal for its own worst-case weights,
  // and take the best difference against the opposite side.
  ThresholdPair thresholds_via_solution_enumeration(std::size_t element) const;

  // First feasible set (enumeration order) that is optimal under every
  // realization, or absent. The per-rival worst case (hi on S* \ S, lo on
  // S \ S*) is realized simultaneously by the single realization "hi on
  // S*, lo elsewhere", so one constrained-free solve certifies S*.
  std::optional<std::vector<std::size_t>> find_universally_optimal() const;
  std::optional<std::vector<std::size_t>> find_universally_optimal(
      const std::vector<UncertaintyInterval>& pinned) const;

  // True when the given set is optimal under every realization drawn from
  // the given intervals.
  bool is_universally_optimal(const std::vector<std::size_t>& solution,
                              const std::vector<UncertaintyInterval>& pinned) const;

  // Whether revealing exactly the given elements always leaves a
  // universally optimal solution. Decided exactly over the whole revelation
  // box: extreme revelations alone can miss interior failures, so each
  // remaining element's safe region is bisected along the lo-to-hi diagonal
  // down to the provable gap between distinct breakpoints (see the notes in
  // the implementation).
  bool is_admissible(const std::vector<std::size_t>& query) const;

  // Feasible sets as element bitmasks in deterministic enumeration order.
  // Requires at most 64 elements and the per-family caps above.
  const std::vector<std::uint64_t>& feasible_masks() const;

 private:
  const Instance* inst_;
  mutable std::optional<std::vector<std::uint64_t>> masks_;
};

// Free-function forms; each builds a throwaway engine.

SolveResult solve(const Instance& inst, const Realization& weights,
                  const SolveConstraint& con);

// Streams the 2^k extreme realizations (k = number of nontrivial intervals
// outside `fixed`) in lexicographic order over declaration order, lo before
// hi. Fixed values must lie inside their intervals.
void for_each_extreme_realization(
    const Instance& inst, const std::map<ElementId, Rational>& fixed,
    const std::function<void(const Realization&)>& yield);

std::vector<Realization> enumerate_extreme_realizations(
    const Instance& inst, const std::map<ElementId, Rational>& fixed = {});

ExtendedWeight threshold_at(const Instance& inst, std::size_t element,
                            const std::vector<Rational>& weights);

ThresholdPair brute_force_thresholds(const Instance& inst, std::size_t element,
                                     const BruteForceOptions& options = {});

ThresholdPair thresholds_via_solution_enumeration(const Instance& inst,
                                                  std::size_t element);

std::optional<std::vector<std::size_t>> find_universally_optimal(const Instance& inst);

bool is_admissible_semantic(const Instance& inst,
                            const std::vector<std::size_t>& query);

}  // namespace admiq::oracle
