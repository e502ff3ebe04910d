#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "admiq/query.hpp"
#include "admiq/reductions.hpp"
#include "admiq/types.hpp"

namespace admiq::io {

// Instance files are JSON:
//   {"vertices": V, "family": {"kind": ...}, "objective": "min"|"max",
//    "elements": [{"id": ..., "endpoints": [u,v], "interval": [lo,hi],
//                  "cost": ...}, ...]}
// Weights and costs are exact rationals written as decimal strings ("3",
// "-1.25", "7/2"); plain JSON integers are accepted too, floating-point
// numbers are rejected. "cost" defaults to 1. "vertices" and per-element
// "endpoints" appear exactly for the graph-backed families; family kinds are
// mst, st-path (+ source, target, directed), tree-matching,
// bipartite-matching (+ left, a list of left-side vertices), uniform-matroid
// (+ rank and optional size) and graphic-matroid. Unknown or duplicate keys
// are rejected.
//
// Throws Error{ParseError} on malformed input and the validate_instance
// errors on semantic problems.
Instance parse_instance_text(const std::string& text);
Instance parse_instance(const std::string& path);

// Canonical form: elements sorted by id, every optional field written out,
// two-space indent. parse_instance_text(emit_instance(x)) reproduces x up to
// element order, and emit is a fixed point on its own output.
std::string emit_instance(const Instance& inst);

// Whole-file helpers; both report failures as Error{ParseError}.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct ThresholdRow {
  ElementId id;
  ThresholdPair thresholds;
  ElementColor color;
};

// Report emitted for an instance: one row per element plus the optional
// minimum-query block.
struct ThresholdReport {
  std::vector<ThresholdRow> rows;
  std::optional<std::vector<ElementId>> query;
  std::optional<Rational> query_cost;
};

// Rows in instance order with colors recomputed from the thresholds, so the
// emitted colors always agree with classify. Throws Error{MissingThreshold}
// unless there is exactly one pair per element.
ThresholdReport make_threshold_report(const Instance& inst,
                                      const std::vector<ThresholdPair>& thresholds);

// {"elements":[{"id","t_plus","t_minus","color"},...]} with "query" and
// "cost" appended when the report carries them. Infinite thresholds are
// written as "+inf"/"-inf".
std::string emit_threshold_report(const ThresholdReport& report);

// {"query":[ids...],"cost":...}, ids in instance order.
std::string emit_query_plan(const Instance& inst, const QueryPlan& plan);

// {"solution":[ids...]}, ids in instance order.
std::string emit_solution(const Instance& inst,
                          const std::vector<std::size_t>& solution);

// Approximation brackets for one element. Each side is either
// {"kind":"bracket","lo","hi","iterations"} or {"kind":"+inf"|"-inf",
// "iterations"}.
std::string emit_bracket_report(const Instance& inst, std::size_t element,
                                const ApproxThresholds& approx);

// Graphviz rendering: vertices by index, edges labelled "id [lo,hi]".
// Directed families render as a digraph; path endpoints get a double circle
// and left-side vertices a box. With colors (one per element) edges are
// drawn blue/red/gray/black for Blue/Red/Trivial/Uncolored; an empty vector
// leaves them uncolored. Throws Error{FamilyShapeMismatch} for families
// without a graph.
std::string to_dot(const Instance& inst,
                   const std::vector<ElementColor>& colors = {});

// Formula files: {"vars": n, "clauses": [[l1,l2,l3], ...]} with signed
// 1-based literals. Structural checks only; literal ranges are validated by
// the reductions that consume the formula.
CnfFormula parse_formula_text(const std::string& text);
CnfFormula parse_formula(const std::string& path);

// Reveal files: {"id": value, ...} mapping element ids to revealed weights.
std::unordered_map<std::string, Rational> parse_reveal_text(const std::string& text);
std::unordered_map<std::string, Rational> parse_reveal(const std::string& path);

}  // namespace admiq::io
