#include "admiq/reductions.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "admiq/errors.hpp"
#include "admiq/oracle.hpp"

namespace admiq {
namespace {

constexpr int kMaxSatVariables = 20;
constexpr int kMaxHamiltonianVertices = 12;

void check_formula(const CnfFormula& phi) {
  if (phi.variable_count < 0) {
    fail(ErrorCode::ParseError, "negative variable count");
  }
  for (const auto& clause : phi.clauses) {
    for (int literal : clause) {
      if (literal == 0 || literal > phi.variable_count ||
          -literal > phi.variable_count) {
        fail(ErrorCode::ParseError, "literal index out of range");
      }
    }
  }
}

void check_formula_nonempty(const CnfFormula& phi) {
  check_formula(phi);
  if (phi.clauses.empty()) {
    fail(ErrorCode::EmptyFormula, "the formula has no clauses");
  }
}

// Incremental builder keeping vertex names only until indices are assigned.
struct GraphBuilder {
  Graph graph;
  std::unordered_map<std::string, int> vertex_index;
  std::vector<ElementId> ids;
  std::vector<UncertaintyInterval> intervals;

  int vertex(const std::string& name) {
    auto [it, inserted] = vertex_index.try_emplace(name, graph.vertex_count);
    if (inserted) ++graph.vertex_count;
    return it->second;
  }

  void edge(const std::string& a, const std::string& b, Rational lo, Rational hi) {
    graph.edges.push_back({vertex(a), vertex(b)});
    ids.push_back(a + "-" + b);
    intervals.push_back({std::move(lo), std::move(hi)});
  }

  void arc(const std::string& from, const std::string& to, Rational lo, Rational hi) {
    graph.edges.push_back({vertex(from), vertex(to)});
    ids.push_back(from + ">" + to);
    intervals.push_back({std::move(lo), std::move(hi)});
  }

  Instance finish(FamilyDescriptor family) const {
    Instance inst;
    inst.elements = ids;
    inst.intervals = intervals;
    inst.costs.assign(ids.size(), Rational(1));
    inst.family = std::move(family);
    inst.objective = Objective::Min;
    return validate_instance(std::move(inst));
  }
};

bool hamiltonian_path_exists(const Graph& h, int s, int t) {
  const int n = h.vertex_count;
  if (n > kMaxHamiltonianVertices) {
    fail(ErrorCode::TooLarge, "the Hamiltonian path check is certified only up to " +
                                  std::to_string(kMaxHamiltonianVertices) +
                                  " vertices");
  }
  if (n == 0) return false;
  std::vector<std::uint32_t> neighbors(static_cast<std::size_t>(n), 0);
  for (const auto& e : h.edges) {
    if (e.u == e.v) continue;
    neighbors[static_cast<std::size_t>(e.u)] |= std::uint32_t{1} << e.v;
    neighbors[static_cast<std::size_t>(e.v)] |= std::uint32_t{1} << e.u;
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  // reach[mask] = set of possible path ends after visiting exactly `mask`.
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  reach[std::uint32_t{1} << s] = std::uint32_t{1} << s;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    while (ends) {
      const int v = __builtin_ctz(ends);
      ends &= ends - 1;
      std::uint32_t next = neighbors[static_cast<std::size_t>(v)] & ~mask;
      while (next) {
        const int w = __builtin_ctz(next);
        next &= next - 1;
        reach[mask | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
      }
    }
  }
  return (reach[full] >> t) & 1;
}

std::string occurrence_name(int k, int j) {
  return "u" + std::to_string(k) + "_" + std::to_string(j);
}

std::string variable_name(int b, int i) {
  return "v" + std::to_string(b) + "_" + std::to_string(i);
}

}  // namespace

bool formula_satisfiable(const CnfFormula& phi) {
  check_formula(phi);
  if (phi.variable_count > kMaxSatVariables) {
    fail(ErrorCode::TooLarge, "satisfiability is certified only up to " +
                                  std::to_string(kMaxSatVariables) + " variables");
  }
  const std::uint32_t count = std::uint32_t{1} << phi.variable_count;
  for (std::uint32_t assignment = 0; assignment < count; ++assignment) {
    bool all = true;
    for (const auto& clause : phi.clauses) {
      bool any = false;
      for (int literal : clause) {
        const int var = literal > 0 ? literal : -literal;
        const bool value = (assignment >> (var - 1)) & 1;
        if (value == (literal > 0)) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

GadgetInstance sat3_to_stpath(const CnfFormula& phi) {
  check_formula_nonempty(phi);
  const int m = static_cast<int>(phi.clauses.size());
  const int n = phi.variable_count;
  GraphBuilder b;

  // Layer order fixes the vertex numbering: source, clause triples, the
  // two-vertex neck, variable pairs (negated literal first), sink.
  b.vertex("s");
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= 3; ++k) b.vertex(occurrence_name(k, j));
  }
  b.vertex("u");
  b.vertex("v");
  for (int i = 1; i <= n; ++i) {
    b.vertex(variable_name(0, i));
    b.vertex(variable_name(1, i));
  }
  b.vertex("t");

  std::vector<std::vector<std::string>> layers;
  layers.push_back({"s"});
  for (int j = 1; j <= m; ++j) {
    layers.push_back({occurrence_name(1, j), occurrence_name(2, j),
                      occurrence_name(3, j)});
  }
  layers.push_back({"u"});
  layers.push_back({"v"});
  for (int i = 1; i <= n; ++i) {
    layers.push_back({variable_name(0, i), variable_name(1, i)});
  }
  layers.push_back({"t"});
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    for (const auto& from : layers[l]) {
      for (const auto& to : layers[l + 1]) b.arc(from, to, 0, 1);
    }
  }

  // An occurrence vertex jumps to the variable vertex of the opposite
  // literal: the pair can never both lie on a consistent path.
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const int literal = phi.clauses[static_cast<std::size_t>(j - 1)]
                                     [static_cast<std::size_t>(k - 1)];
      const int var = literal > 0 ? literal : -literal;
      b.arc(occurrence_name(k, j), variable_name(literal > 0 ? 0 : 1, var), 0, 0);
    }
  }

  GadgetInstance out;
  out.target = "u>v";
  out.claim.kind = GadgetClaim::Kind::ExclusionAtLeast;
  out.claim.bound = 1;
  out.claim.condition = formula_satisfiable(phi);
  out.claim.text =
      "the exclusion threshold of the target arc is at least 1 exactly when "
      "the formula is satisfiable";
  StPathFamily family;
  family.graph = b.graph;
  family.source = b.vertex("s");
  family.target = b.vertex("t");
  family.directed = true;
  out.instance = b.finish(std::move(family));
  return out;
}

GadgetInstance hampath_to_stpath(const Graph& h, int s, int t) {
  const int n = h.vertex_count;
  if (s < 0 || s >= n || t < 0 || t >= n) {
    fail(ErrorCode::UnknownVertex, "terminal vertex out of range");
  }
  if (s == t) fail(ErrorCode::SameEndpoints, "the terminals coincide");
  for (const auto& e : h.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      fail(ErrorCode::UnknownVertex, "edge endpoint out of range");
    }
  }

  Instance inst;
  StPathFamily family;
  family.graph = h;
  family.graph.vertex_count = n + 2;  // the detour vertices u, v
  const int u = n;
  const int v = n + 1;
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    inst.elements.push_back("h" + std::to_string(i));
    inst.intervals.push_back({1, n});
  }
  family.graph.edges.push_back({s, u});
  inst.elements.push_back("su");
  inst.intervals.push_back({0, 0});
  family.graph.edges.push_back({u, v});
  inst.elements.push_back("uv");
  inst.intervals.push_back({0, 0});
  family.graph.edges.push_back({v, t});
  inst.elements.push_back("vt");
  inst.intervals.push_back({0, 0});
  family.source = s;
  family.target = t;
  family.directed = false;
  inst.costs.assign(inst.elements.size(), Rational(1));
  inst.family = std::move(family);
  inst.objective = Objective::Min;

  GadgetInstance out;
  out.instance = validate_instance(std::move(inst));
  out.target = "uv";
  out.claim.kind = GadgetClaim::Kind::InclusionAtLeast;
  out.claim.bound = n - 1;
  out.claim.condition = hamiltonian_path_exists(h, s, t);
  out.claim.text =
      "the inclusion threshold of the target edge is at least " +
      std::to_string(n - 1) +
      " exactly when the graph has a Hamiltonian path between the terminals";
  return out;
}

GadgetInstance sat3_to_bipartite_matching(const CnfFormula& phi,
                                          MatchingVariant variant) {
  check_formula_nonempty(phi);
  const int m = static_cast<int>(phi.clauses.size());
  const int n = phi.variable_count;
  GraphBuilder b;

  for (int i = 1; i <= n; ++i) {
    const std::string p = "p" + std::to_string(i);
    const std::string neg = "n" + std::to_string(i);
    const std::string si = "s" + std::to_string(i);
    const std::string vi = "v" + std::to_string(i);
    b.edge(p, si, 0, 1);
    b.edge(p, vi, 0, 1);
    b.edge(neg, si, 0, 1);
    b.edge(neg, vi, 0, 1);
  }
  for (int j = 1; j <= m; ++j) {
    for (const char* left : {"a", "b", "c"}) {
      for (int k = 1; k <= 3; ++k) {
        b.edge(left + std::to_string(j),
               "c" + std::to_string(k) + "_" + std::to_string(j), 0, 1);
      }
    }
  }
  for (int i = 1; i <= n; ++i) b.edge("v", "v" + std::to_string(i), 0, 0);
  for (int j = 1; j <= m; ++j) b.edge("u", "c" + std::to_string(j), 0, 0);
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const int literal = phi.clauses[static_cast<std::size_t>(j - 1)]
                                     [static_cast<std::size_t>(k - 1)];
      const int var = literal > 0 ? literal : -literal;
      b.edge("c" + std::to_string(k) + "_" + std::to_string(j),
             (literal > 0 ? "p" : "n") + std::to_string(var), 0, 0);
    }
  }

  GadgetInstance out;
  out.claim.condition = formula_satisfiable(phi);
  if (variant == MatchingVariant::Exclusion) {
    b.edge("u", "v", 0, 0);
    out.target = "u-v";
    out.claim.kind = GadgetClaim::Kind::ExclusionEquals;
    out.claim.bound = 1;
    out.claim.alternative = 0;
    out.claim.text =
        "the exclusion threshold of the target edge is 1 when the formula "
        "is satisfiable and 0 when it is not";
  } else {
    // Matchings through the old target correspond to matchings avoiding the
    // new one and vice versa, flipping the threshold's sign.
    b.edge("u", "u'", 0, 0);
    b.edge("u'", "v'", 0, 0);
    b.edge("v'", "v", 0, 0);
    out.target = "u'-v'";
    out.claim.kind = GadgetClaim::Kind::InclusionEquals;
    out.claim.bound = -1;
    out.claim.alternative = 0;
    out.claim.text =
        "the inclusion threshold of the target edge is -1 when the formula "
        "is satisfiable and 0 when it is not";
  }

  // Literal and clause-head vertices share one side with v; the occurrence
  // and gadget-right vertices sit opposite together with u.
  BipartitePerfectMatchingFamily family;
  family.graph = b.graph;
  family.left.assign(static_cast<std::size_t>(b.graph.vertex_count), 0);
  const auto mark = [&](const std::string& name) {
    family.left[static_cast<std::size_t>(b.vertex_index.at(name))] = 1;
  };
  for (int i = 1; i <= n; ++i) {
    mark("p" + std::to_string(i));
    mark("n" + std::to_string(i));
  }
  for (int j = 1; j <= m; ++j) {
    mark("a" + std::to_string(j));
    mark("b" + std::to_string(j));
    mark("c" + std::to_string(j));
  }
  mark("v");
  if (variant == MatchingVariant::Inclusion) mark("u'");
  out.instance = b.finish(std::move(family));
  return out;
}

GadgetReport verify_gadget(const GadgetInstance& gadget) {
  GadgetReport report;
  report.claim = gadget.claim;
  const std::size_t target = gadget.instance.index_of(gadget.target);

  report.solution_scan =
      oracle::thresholds_via_solution_enumeration(gadget.instance, target);
  try {
    report.realization_scan = oracle::brute_force_thresholds(gadget.instance, target);
  } catch (const Error& error) {
    if (error.code() != ErrorCode::TooLarge &&
        error.code() != ErrorCode::TooManyFreeIntervals &&
        error.code() != ErrorCode::TooManySolutions) {
      throw;
    }
    report.notes.push_back(std::string("realization scan skipped: ") + error.what());
  }
  if (report.realization_scan) {
    report.oracles_agree =
        report.realization_scan->t_plus == report.solution_scan.t_plus &&
        report.realization_scan->t_minus == report.solution_scan.t_minus;
  }

  const ExtendedWeight expected(gadget.claim.condition ? gadget.claim.bound
                                                       : gadget.claim.alternative);
  switch (gadget.claim.kind) {
    case GadgetClaim::Kind::InclusionAtLeast:
      report.claim_holds =
          (report.solution_scan.t_plus >= ExtendedWeight(gadget.claim.bound)) ==
          gadget.claim.condition;
      break;
    case GadgetClaim::Kind::ExclusionAtLeast:
      report.claim_holds =
          (report.solution_scan.t_minus >= ExtendedWeight(gadget.claim.bound)) ==
          gadget.claim.condition;
      break;
    case GadgetClaim::Kind::ExclusionEquals:
      report.claim_holds = report.solution_scan.t_minus == expected;
      break;
    case GadgetClaim::Kind::InclusionEquals:
      report.claim_holds = report.solution_scan.t_plus == expected;
      break;
  }
  return report;
}

}  // namespace admiq
