#include "admiq/io.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "admiq/errors.hpp"

namespace admiq::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& where, const std::string& message) {
  fail(ErrorCode::ParseError, where + ": " + message);
}

// Parses with duplicate-key rejection; nlohmann keeps the last occurrence
// silently, which would make typos vanish instead of erroring.
json parse_json_text(const std::string& text, const std::string& where) {
  std::vector<std::set<std::string>> open;
  json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::object_start) {
      open.emplace_back();
    } else if (event == json::parse_event_t::object_end) {
      if (!open.empty()) open.pop_back();
    } else if (event == json::parse_event_t::key) {
      auto key = parsed.get<std::string>();
      if (!open.back().insert(key).second) {
        bad(where, "duplicate key '" + key + "'");
      }
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::exception& e) {
    bad(where, e.what());
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (const json* hit = find(obj, key)) return *hit;
  bad(where, std::string("missing key '") + key + "'");
}

void check_object(const json& node, const std::string& where) {
  if (!node.is_object()) bad(where, "expected an object");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) bad(where, "unexpected key '" + it.key() + "'");
  }
}

int get_int(const json& node, const std::string& where) {
  if (!node.is_number_integer()) bad(where, "expected an integer");
  if (node.is_number_unsigned()) {
    auto value = node.get<std::uint64_t>();
    if (value > static_cast<std::uint64_t>(INT_MAX)) bad(where, "integer out of range");
    return static_cast<int>(value);
  }
  auto value = node.get<std::int64_t>();
  if (value < INT_MIN || value > INT_MAX) bad(where, "integer out of range");
  return static_cast<int>(value);
}

Rational get_rational(const json& node, const std::string& where) {
  if (node.is_string()) {
    try {
      return parse_rational(node.get<std::string>());
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }
  if (node.is_number_float()) {
    bad(where, "floating-point numbers are not exact; write the value as a decimal string");
  }
  if (node.is_number_unsigned()) return Rational(BigInt(node.get<std::uint64_t>()));
  if (node.is_number_integer()) return Rational(BigInt(node.get<std::int64_t>()));
  bad(where, "expected a decimal string");
}

const char* dot_color(ElementColor color) {
  switch (color) {
    case ElementColor::Blue:
      return "blue";
    case ElementColor::Red:
      return "red";
    case ElementColor::Trivial:
      return "gray";
    case ElementColor::Uncolored:
      return "black";
  }
  return "black";
}

std::string dot_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

ordered_json bracket_json(const ThresholdBracket& bracket) {
  ordered_json out;
  switch (bracket.kind) {
    case ThresholdBracket::Kind::PlusInfinity:
      out["kind"] = "+inf";
      break;
    case ThresholdBracket::Kind::MinusInfinity:
      out["kind"] = "-inf";
      break;
    case ThresholdBracket::Kind::Bracket:
      out["kind"] = "bracket";
      out["lo"] = format_rational(bracket.lo);
      out["hi"] = format_rational(bracket.hi);
      break;
  }
  out["iterations"] = static_cast<std::uint64_t>(bracket.iterations);
  return out;
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
  json doc = parse_json_text(text, "instance");
  check_object(doc, "instance");
  check_keys(doc, "instance", {"vertices", "family", "objective", "elements"});

  const json& family_node = need(doc, "family", "instance");
  check_object(family_node, "family");
  const json& kind_node = need(family_node, "kind", "family");
  if (!kind_node.is_string()) bad("family", "'kind' must be a string");
  const std::string kind = kind_node.get<std::string>();
  const bool graph_family = kind != "uniform-matroid";

  int vertices = 0;
  if (graph_family) {
    vertices = get_int(need(doc, "vertices", "instance"), "vertices");
    if (vertices < 0) bad("vertices", "must be nonnegative");
  } else if (doc.contains("vertices")) {
    bad("instance", "'vertices' does not apply to a uniform matroid");
  }

  const json& objective_node = need(doc, "objective", "instance");
  if (!objective_node.is_string() ||
      (objective_node != "min" && objective_node != "max")) {
    bad("objective", "expected \"min\" or \"max\"");
  }

  const json& element_nodes = need(doc, "elements", "instance");
  if (!element_nodes.is_array()) bad("elements", "expected an array");

  Instance inst;
  Graph graph;
  graph.vertex_count = vertices;
  std::size_t position = 0;
  for (const json& node : element_nodes) {
    const std::string slot = "elements[" + std::to_string(position++) + "]";
    check_object(node, slot);
    const json& id_node = need(node, "id", slot);
    if (!id_node.is_string() || id_node.get<std::string>().empty()) {
      bad(slot, "'id' must be a nonempty string");
    }
    std::string id = id_node.get<std::string>();
    const std::string where = "element '" + id + "'";
    check_keys(node, where, {"id", "endpoints", "interval", "cost"});

    if (graph_family) {
      const json& endpoints = need(node, "endpoints", where);
      if (!endpoints.is_array() || endpoints.size() != 2) {
        bad(where, "'endpoints' must be [u,v]");
      }
      graph.edges.push_back({get_int(endpoints[0], where), get_int(endpoints[1], where)});
    } else if (node.contains("endpoints")) {
      bad(where, "'endpoints' does not apply to a uniform matroid");
    }

    const json& interval = need(node, "interval", where);
    if (!interval.is_array() || interval.size() != 2) {
      bad(where, "'interval' must be [lo,hi]");
    }
    inst.intervals.push_back(
        {get_rational(interval[0], where), get_rational(interval[1], where)});
    inst.costs.push_back(find(node, "cost") ? get_rational(*find(node, "cost"), where)
                                            : Rational(1));
    inst.elements.push_back(std::move(id));
  }

  if (kind == "mst") {
    check_keys(family_node, "family", {"kind"});
    inst.family = MstFamily{std::move(graph)};
  } else if (kind == "st-path") {
    check_keys(family_node, "family", {"kind", "source", "target", "directed"});
    StPathFamily family;
    family.source = get_int(need(family_node, "source", "family"), "family source");
    family.target = get_int(need(family_node, "target", "family"), "family target");
    if (const json* directed = find(family_node, "directed")) {
      if (!directed->is_boolean()) bad("family", "'directed' must be a boolean");
      family.directed = directed->get<bool>();
    }
    family.graph = std::move(graph);
    inst.family = std::move(family);
  } else if (kind == "tree-matching") {
    check_keys(family_node, "family", {"kind"});
    inst.family = TreeMatchingFamily{std::move(graph)};
  } else if (kind == "bipartite-matching") {
    check_keys(family_node, "family", {"kind", "left"});
    BipartitePerfectMatchingFamily family;
    family.left.assign(static_cast<std::size_t>(vertices), 0);
    const json& left = need(family_node, "left", "family");
    if (!left.is_array()) bad("family", "'left' must be an array of vertices");
    for (const json& entry : left) {
      int v = get_int(entry, "family left");
      if (v < 0 || v >= vertices) {
        fail(ErrorCode::UnknownVertex,
             "family: left vertex " + std::to_string(v) + " out of range");
      }
      if (family.left[static_cast<std::size_t>(v)]) {
        bad("family", "vertex " + std::to_string(v) + " listed twice in 'left'");
      }
      family.left[static_cast<std::size_t>(v)] = 1;
    }
    family.graph = std::move(graph);
    inst.family = std::move(family);
  } else if (kind == "uniform-matroid") {
    check_keys(family_node, "family", {"kind", "rank", "size"});
    UniformMatroidFamily family;
    family.rank = get_int(need(family_node, "rank", "family"), "family rank");
    family.size = find(family_node, "size")
                      ? get_int(*find(family_node, "size"), "family size")
                      : static_cast<int>(inst.elements.size());
    inst.family = family;
  } else if (kind == "graphic-matroid") {
    check_keys(family_node, "family", {"kind"});
    inst.family = GraphicMatroidFamily{std::move(graph)};
  } else {
    bad("family", "unknown kind '" + kind + "'");
  }

  inst.objective = objective_node == "min" ? Objective::Min : Objective::Max;
  return validate_instance(std::move(inst));
}

Instance parse_instance(const std::string& path) {
  return parse_instance_text(read_file(path));
}

std::string emit_instance(const Instance& inst) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.elements[a] < inst.elements[b];
  });

  const Graph* graph = inst.graph();
  ordered_json doc;
  if (graph) doc["vertices"] = graph->vertex_count;

  ordered_json family;
  std::visit(
      overloaded{
          [&](const MstFamily&) { family["kind"] = "mst"; },
          [&](const StPathFamily& f) {
            family["kind"] = "st-path";
            family["source"] = f.source;
            family["target"] = f.target;
            family["directed"] = f.directed;
          },
          [&](const TreeMatchingFamily&) { family["kind"] = "tree-matching"; },
          [&](const BipartitePerfectMatchingFamily& f) {
            family["kind"] = "bipartite-matching";
            auto left = ordered_json::array();
            for (std::size_t v = 0; v < f.left.size(); ++v) {
              if (f.left[v]) left.push_back(v);
            }
            family["left"] = std::move(left);
          },
          [&](const UniformMatroidFamily& f) {
            family["kind"] = "uniform-matroid";
            family["rank"] = f.rank;
            family["size"] = f.size;
          },
          [&](const GraphicMatroidFamily&) { family["kind"] = "graphic-matroid"; },
      },
      inst.family);
  doc["family"] = std::move(family);
  doc["objective"] = inst.objective == Objective::Min ? "min" : "max";

  auto elements = ordered_json::array();
  for (std::size_t i : order) {
    ordered_json element;
    element["id"] = inst.elements[i];
    if (graph) element["endpoints"] = {graph->edges[i].u, graph->edges[i].v};
    element["interval"] = {format_rational(inst.intervals[i].lo),
                           format_rational(inst.intervals[i].hi)};
    element["cost"] = format_rational(inst.costs[i]);
    elements.push_back(std::move(element));
  }
  doc["elements"] = std::move(elements);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  return std::move(buffer).str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
}

ThresholdReport make_threshold_report(const Instance& inst,
                                      const std::vector<ThresholdPair>& thresholds) {
  if (thresholds.size() != inst.size()) {
    fail(ErrorCode::MissingThreshold, "expected one threshold pair per element");
  }
  ThresholdReport report;
  report.rows.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    report.rows.push_back({inst.elements[i], thresholds[i],
                           classify(inst.intervals[i], thresholds[i])});
  }
  return report;
}

std::string emit_threshold_report(const ThresholdReport& report) {
  ordered_json doc;
  auto rows = ordered_json::array();
  for (const ThresholdRow& row : report.rows) {
    ordered_json node;
    node["id"] = row.id;
    node["t_plus"] = format_extended(row.thresholds.t_plus);
    node["t_minus"] = format_extended(row.thresholds.t_minus);
    node["color"] = to_string(row.color);
    rows.push_back(std::move(node));
  }
  doc["elements"] = std::move(rows);
  if (report.query) {
    auto ids = ordered_json::array();
    for (const ElementId& id : *report.query) ids.push_back(id);
    doc["query"] = std::move(ids);
    doc["cost"] = format_rational(report.query_cost.value_or(Rational(0)));
  }
  return doc.dump(2) + "\n";
}

std::string emit_query_plan(const Instance& inst, const QueryPlan& plan) {
  ordered_json doc;
  auto ids = ordered_json::array();
  for (std::size_t index : plan.query) ids.push_back(inst.elements.at(index));
  doc["query"] = std::move(ids);
  doc["cost"] = format_rational(plan.cost);
  return doc.dump(2) + "\n";
}

std::string emit_solution(const Instance& inst,
                          const std::vector<std::size_t>& solution) {
  ordered_json doc;
  auto ids = ordered_json::array();
  for (std::size_t index : solution) ids.push_back(inst.elements.at(index));
  doc["solution"] = std::move(ids);
  return doc.dump(2) + "\n";
}

std::string emit_bracket_report(const Instance& inst, std::size_t element,
                                const ApproxThresholds& approx) {
  ordered_json doc;
  doc["element"] = inst.elements.at(element);
  doc["t_plus"] = bracket_json(approx.plus);
  doc["t_minus"] = bracket_json(approx.minus);
  return doc.dump(2) + "\n";
}

std::string to_dot(const Instance& inst, const std::vector<ElementColor>& colors) {
  const Graph* graph = inst.graph();
  if (!graph) {
    fail(ErrorCode::FamilyShapeMismatch, "DOT export needs a graph-backed family");
  }
  if (!colors.empty() && colors.size() != inst.size()) {
    fail(ErrorCode::MissingThreshold, "expected one color per element");
  }

  bool directed = false;
  int source = -1;
  int target = -1;
  const std::vector<char>* left = nullptr;
  if (const auto* f = std::get_if<StPathFamily>(&inst.family)) {
    directed = f->directed;
    source = f->source;
    target = f->target;
  } else if (const auto* f = std::get_if<BipartitePerfectMatchingFamily>(&inst.family)) {
    left = &f->left;
  }

  std::string out = directed ? "digraph instance {\n" : "graph instance {\n";
  for (int v = 0; v < graph->vertex_count; ++v) {
    out += "  " + std::to_string(v);
    if (v == source || v == target) {
      out += " [shape=doublecircle]";
    } else if (left && (*left)[static_cast<std::size_t>(v)]) {
      out += " [shape=box]";
    }
    out += ";\n";
  }
  const char* arrow = directed ? " -> " : " -- ";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Graph::Endpoints& e = graph->edges[i];
    out += "  " + std::to_string(e.u) + arrow + std::to_string(e.v);
    out += " [label=\"" + dot_escape(inst.elements[i]) + " [" +
           format_rational(inst.intervals[i].lo) + "," +
           format_rational(inst.intervals[i].hi) + "]\"";
    if (!colors.empty()) {
      out += ", color=";
      out += dot_color(colors[i]);
    }
    out += "];\n";
  }
  out += "}\n";
  return out;
}

CnfFormula parse_formula_text(const std::string& text) {
  json doc = parse_json_text(text, "formula");
  check_object(doc, "formula");
  check_keys(doc, "formula", {"vars", "clauses"});
  CnfFormula phi;
  phi.variable_count = get_int(need(doc, "vars", "formula"), "formula vars");
  const json& clauses = need(doc, "clauses", "formula");
  if (!clauses.is_array()) bad("formula", "'clauses' must be an array");
  std::size_t position = 0;
  for (const json& clause : clauses) {
    const std::string where = "clauses[" + std::to_string(position++) + "]";
    if (!clause.is_array() || clause.size() != 3) {
      bad(where, "each clause holds exactly three literals");
    }
    phi.clauses.push_back(
        {get_int(clause[0], where), get_int(clause[1], where), get_int(clause[2], where)});
  }
  return phi;
}

CnfFormula parse_formula(const std::string& path) {
  return parse_formula_text(read_file(path));
}

std::unordered_map<std::string, Rational> parse_reveal_text(const std::string& text) {
  json doc = parse_json_text(text, "reveal");
  check_object(doc, "reveal");
  std::unordered_map<std::string, Rational> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out.emplace(it.key(), get_rational(it.value(), "reveal '" + it.key() + "'"));
  }
  return out;
}

std::unordered_map<std::string, Rational> parse_reveal(const std::string& path) {
  return parse_reveal_text(read_file(path));
}

}  // namespace admiq::io
