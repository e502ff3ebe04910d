#include "admiq/types.hpp"

#include <algorithm>
#include <utility>

namespace admiq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IntervalInverted: return "IntervalInverted";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::FamilyShapeMismatch: return "FamilyShapeMismatch";
    case ErrorCode::AlreadyMin: return "AlreadyMin";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::InvalidRealization: return "InvalidRealization";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::EdgeNotInTree: return "EdgeNotInTree";
    case ErrorCode::SameEndpoints: return "SameEndpoints";
    case ErrorCode::EmptyFormula: return "EmptyFormula";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooManyFreeIntervals: return "TooManyFreeIntervals";
    case ErrorCode::TooManySolutions: return "TooManySolutions";
    case ErrorCode::NoFeasibleSet: return "NoFeasibleSet";
    case ErrorCode::NotIndependentSingleton: return "NotIndependentSingleton";
    case ErrorCode::ConstraintInfeasible: return "ConstraintInfeasible";
    case ErrorCode::MissingThreshold: return "MissingThreshold";
    case ErrorCode::RevealOutOfInterval: return "RevealOutOfInterval";
    case ErrorCode::RevealMissing: return "RevealMissing";
    case ErrorCode::RevealUnexpected: return "RevealUnexpected";
    case ErrorCode::OracleFailure: return "OracleFailure";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message, std::string element)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      element_(std::move(element)) {}

void fail(ErrorCode code, const std::string& message, std::string element) {
  throw Error(code, message, std::move(element));
}

std::optional<std::size_t> Instance::find(std::string_view id) const {
  if (!index.empty()) {
    auto it = index.find(std::string(id));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == id) return i;
  }
  return std::nullopt;
}

std::size_t Instance::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) fail(ErrorCode::UnknownElement, "no element '" + std::string(id) + "'", std::string(id));
  return *found;
}

const Graph* Instance::graph() const {
  return std::visit(
      [](const auto& fam) -> const Graph* {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, UniformMatroidFamily>) {
          return nullptr;
        } else {
          return &fam.graph;
        }
      },
      family);
}

namespace {

void check_graph_shape(const Graph& graph, const Instance& inst) {
  if (graph.edges.size() != inst.elements.size()) {
    fail(ErrorCode::FamilyShapeMismatch,
         "family references " + std::to_string(graph.edges.size()) +
             " edges but the instance has " + std::to_string(inst.elements.size()) +
             " elements");
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    if (e.u < 0 || e.u >= graph.vertex_count || e.v < 0 || e.v >= graph.vertex_count) {
      fail(ErrorCode::UnknownVertex,
           "element '" + inst.elements[i] + "' references a vertex outside 0.." +
               std::to_string(graph.vertex_count - 1),
           inst.elements[i]);
    }
    if (e.u == e.v) {
      fail(ErrorCode::FamilyShapeMismatch,
           "element '" + inst.elements[i] + "' is a self-loop", inst.elements[i]);
    }
  }
}

// Connected and acyclic over all vertices.
bool is_tree(const Graph& graph) {
  if (graph.vertex_count == 0) return false;
  if (graph.edges.size() + 1 != static_cast<std::size_t>(graph.vertex_count)) return false;
  std::vector<int> parent(graph.vertex_count);
  for (int v = 0; v < graph.vertex_count; ++v) parent[v] = v;
  auto find_root = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : graph.edges) {
    int a = find_root(e.u);
    int b = find_root(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace

Instance validate_instance(Instance inst) {
  std::size_t n = inst.elements.size();
  if (inst.intervals.size() != n || inst.costs.size() != n) {
    fail(ErrorCode::FamilyShapeMismatch,
         "expected one interval and one cost per element");
  }

  inst.index.clear();
  inst.index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.elements[i].empty()) {
      fail(ErrorCode::ParseError, "empty element id at position " + std::to_string(i));
    }
    auto [it, inserted] = inst.index.emplace(inst.elements[i], i);
    (void)it;
    if (!inserted) {
      fail(ErrorCode::DuplicateElement, "duplicate element id '" + inst.elements[i] + "'",
           inst.elements[i]);
    }
    if (inst.intervals[i].lo > inst.intervals[i].hi) {
      fail(ErrorCode::IntervalInverted,
           "element '" + inst.elements[i] + "' has lo > hi", inst.elements[i]);
    }
  }

  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, UniformMatroidFamily>) {
          if (fam.size != static_cast<int>(n)) {
            fail(ErrorCode::FamilyShapeMismatch,
                 "uniform matroid size " + std::to_string(fam.size) +
                     " does not match element count " + std::to_string(n));
          }
          if (fam.rank < 0 || fam.rank > fam.size) {
            fail(ErrorCode::FamilyShapeMismatch,
                 "uniform matroid rank must lie in 0..size");
          }
        } else if constexpr (std::is_same_v<T, StPathFamily>) {
          check_graph_shape(fam.graph, inst);
          if (fam.source < 0 || fam.source >= fam.graph.vertex_count ||
              fam.target < 0 || fam.target >= fam.graph.vertex_count) {
            fail(ErrorCode::UnknownVertex, "path endpoints outside the vertex range");
          }
          if (fam.source == fam.target) {
            fail(ErrorCode::SameVertex, "path source equals target");
          }
        } else if constexpr (std::is_same_v<T, TreeMatchingFamily>) {
          check_graph_shape(fam.graph, inst);
          if (!is_tree(fam.graph)) {
            fail(ErrorCode::FamilyShapeMismatch, "tree-matching family graph is not a tree");
          }
        } else if constexpr (std::is_same_v<T, BipartitePerfectMatchingFamily>) {
          check_graph_shape(fam.graph, inst);
          if (fam.left.size() != static_cast<std::size_t>(fam.graph.vertex_count)) {
            fail(ErrorCode::FamilyShapeMismatch,
                 "bipartition must cover every vertex exactly once");
          }
          for (std::size_t i = 0; i < fam.graph.edges.size(); ++i) {
            const auto& e = fam.graph.edges[i];
            if (fam.left[e.u] == fam.left[e.v]) {
              fail(ErrorCode::FamilyShapeMismatch,
                   "element '" + inst.elements[i] + "' does not cross the bipartition",
                   inst.elements[i]);
            }
          }
        } else {
          check_graph_shape(fam.graph, inst);
        }
      },
      inst.family);

  return inst;
}

namespace {

Instance negate_objective(const Instance& inst) {
  Instance out = inst;
  out.objective = inst.objective == Objective::Min ? Objective::Max : Objective::Min;
  for (std::size_t i = 0; i < inst.intervals.size(); ++i) {
    out.intervals[i].lo = -inst.intervals[i].hi;
    out.intervals[i].hi = -inst.intervals[i].lo;
  }
  return out;
}

}  // namespace

Instance negate_for_maximization(const Instance& inst) {
  if (inst.objective == Objective::Min) {
    fail(ErrorCode::AlreadyMin, "instance objective is already Min");
  }
  return negate_objective(inst);
}

Instance negate_for_minimization(const Instance& inst) {
  if (inst.objective == Objective::Max) {
    fail(ErrorCode::AlreadyMin, "instance objective is already Max");
  }
  return negate_objective(inst);
}

Realization make_realization(const Instance& inst, std::vector<Rational> values) {
  if (values.size() != inst.size()) {
    fail(ErrorCode::InvalidRealization,
         "expected " + std::to_string(inst.size()) + " weights, got " +
             std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < inst.intervals[i].lo || values[i] > inst.intervals[i].hi) {
      fail(ErrorCode::InvalidRealization,
           "weight of element '" + inst.elements[i] + "' lies outside its interval",
           inst.elements[i]);
    }
  }
  return Realization{std::move(values)};
}

ThresholdPair make_threshold_pair(ExtendedWeight t_plus, ExtendedWeight t_minus) {
  if (t_minus < t_plus) {
    fail(ErrorCode::OracleFailure,
         "threshold pair out of order: t_plus=" + format_extended(t_plus) +
             " t_minus=" + format_extended(t_minus));
  }
  return ThresholdPair{std::move(t_plus), std::move(t_minus)};
}

const char* to_string(ElementColor color) {
  switch (color) {
    case ElementColor::Blue: return "blue";
    case ElementColor::Red: return "red";
    case ElementColor::Trivial: return "trivial";
    case ElementColor::Uncolored: return "uncolored";
  }
  return "unknown";
}

ElementColor classify(const UncertaintyInterval& interval,
                      const ThresholdPair& thresholds) {
  if (interval.is_trivial()) return ElementColor::Trivial;
  if (ExtendedWeight(interval.hi) <= thresholds.t_plus) return ElementColor::Blue;
  if (thresholds.t_minus <= ExtendedWeight(interval.lo)) return ElementColor::Red;
  return ElementColor::Uncolored;
}

}  // namespace admiq
