#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "admiq/rational.hpp"
#include "admiq/types.hpp"

// Hardness gadget generators. Each one turns a combinatorial source problem
// into an uncertainty instance whose target element's threshold encodes the
// source answer; at desk scale the claims are checked against the exact
// engine rather than assumed.
namespace admiq {

// 3-CNF formula; literals are signed 1-based variable indexes and may
// repeat inside a clause.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Brute force over all assignments; certified up to 20 variables
// (Error{TooLarge} beyond). A formula without clauses is satisfiable.
bool formula_satisfiable(const CnfFormula& phi);

// The checkable statement a gadget carries about its target element.
// condition is the source-problem answer (satisfiability, Hamiltonicity),
// precomputed at generation time.
struct GadgetClaim {
  enum class Kind {
    InclusionAtLeast,  // t_plus >= bound exactly when condition holds
    ExclusionAtLeast,  // t_minus >= bound exactly when condition holds
    ExclusionEquals,   // t_minus == (condition ? bound : alternative)
    InclusionEquals,   // t_plus == (condition ? bound : alternative)
  };
  std::string text;
  Kind kind = Kind::InclusionAtLeast;
  Rational bound;
  Rational alternative;
  bool condition = false;
};

struct GadgetInstance {
  Instance instance;
  ElementId target;
  GadgetClaim claim;
};

// Layered shortest-path instance from a 3-CNF formula. One source layer,
// one triple of vertices per clause occurrence, a two-vertex neck holding
// the target arc, one vertex pair per variable (negated literal first), one
// sink layer. Solid arcs join every pair of adjacent layers with interval
// [0,1]; weight-0 arcs jump from each occurrence vertex to the variable
// vertex carrying the opposite literal. The formula is satisfiable exactly
// when the target arc's exclusion threshold is at least 1: realizing a
// consistent source-to-sink path through the neck at the lower limits
// forces every bypass over a jump arc onto an off-path solid arc at 1,
// while the jump arcs keep the inclusion threshold at most -2 regardless
// of satisfiability. Throws Error{EmptyFormula} and Error{ParseError} on
// bad literals.
GadgetInstance sat3_to_stpath(const CnfFormula& phi);

// Shortest-path instance whose target edge's inclusion threshold reaches
// |V(h)|-1 exactly when h has a Hamiltonian s-t path. Edges of h get
// interval [1,|V(h)|]; a three-edge weight-0 detour s-u-v-t carries the
// target uv. Hamiltonicity is decided at generation, certified up to 12
// vertices (Error{TooLarge} beyond). Throws Error{SameEndpoints} when
// s == t and Error{UnknownVertex} on out-of-range vertices.
GadgetInstance hampath_to_stpath(const Graph& h, int s, int t);

// Exclusion: the plain construction with target edge uv. Inclusion: uv is
// rewritten into the path u-u'-v'-v with weight-0 end edges and target
// u'v'; matchings through uv correspond to matchings avoiding u'v' and vice
// versa, so the target threshold mirrors the exclusion gadget's with
// opposite sign.
enum class MatchingVariant { Exclusion, Inclusion };

// Bipartite perfect-matching instance from a 3-CNF formula: one complete
// 2x2 gadget per variable, one complete 3x3 gadget per clause (interval
// [0,1] inside gadgets), weight-0 connectors wiring clause occurrences to
// their literal vertices and the neck vertices u,v to the gadgets, and the
// weight-0 target edge. Sides are balanced. The exclusion threshold of uv
// is claimed 1 when the formula is satisfiable and 0 when not (the
// inclusion variant claims -1 resp. 0 for the inclusion threshold of
// u'v'). Throws Error{EmptyFormula} and Error{ParseError} on bad literals.
GadgetInstance sat3_to_bipartite_matching(const CnfFormula& phi,
                                          MatchingVariant variant);

// Threshold pair of the target by both exact routes, compared against the
// claim. The realization scan is skipped with a note when its enumeration
// cap is exceeded (large gadgets); the solution scan always runs and is the
// value the claim is judged on.
struct GadgetReport {
  std::optional<ThresholdPair> realization_scan;
  ThresholdPair solution_scan;
  std::optional<bool> oracles_agree;  // absent when only one route ran
  GadgetClaim claim;
  bool claim_holds = false;
  std::vector<std::string> notes;
};

GadgetReport verify_gadget(const GadgetInstance& gadget);

}  // namespace admiq
