#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "admiq/io.hpp"
#include "admiq/oracle.hpp"
#include "admiq/query.hpp"
#include "admiq/reductions.hpp"
#include "helpers.hpp"

using namespace admiq;
using namespace admiq::oracle;
using namespace admiq::testing;

namespace {

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& error) {
    return error.code();
  }
  FAIL("expected an Error");
  return ErrorCode::OracleFailure;
}

std::string tri_text() {
  return R"({
  "vertices": 3,
  "family": {"kind": "mst"},
  "objective": "min",
  "elements": [
    {"id": "a", "endpoints": [0, 1], "interval": ["1", "1"], "cost": "1"},
    {"id": "b", "endpoints": [1, 2], "interval": ["2", "4"], "cost": "1"},
    {"id": "c", "endpoints": [0, 2], "interval": ["3", "5"], "cost": "1"}
  ]
})";
}

bool instances_equal(const Instance& a, const Instance& b) {
  if (a.elements != b.elements) return false;
  if (a.costs != b.costs) return false;
  if (a.objective != b.objective) return false;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.intervals[i].lo != b.intervals[i].lo) return false;
    if (a.intervals[i].hi != b.intervals[i].hi) return false;
  }
  const Graph* ga = a.graph();
  const Graph* gb = b.graph();
  if ((ga == nullptr) != (gb == nullptr)) return false;
  if (ga != nullptr) {
    if (ga->vertex_count != gb->vertex_count) return false;
    if (ga->edges.size() != gb->edges.size()) return false;
    for (std::size_t i = 0; i < ga->edges.size(); ++i) {
      if (ga->edges[i].u != gb->edges[i].u || ga->edges[i].v != gb->edges[i].v) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parsing the triangle document") {
  Instance inst = io::parse_instance_text(tri_text());
  CHECK(instances_equal(inst, tri_instance()));
  CHECK(std::holds_alternative<MstFamily>(inst.family));
}

TEST_CASE("emission is canonical and parse round-trips") {
  Instance tri = tri_instance();
  std::string text = io::emit_instance(tri);
  CHECK(text.back() == '\n');
  Instance again = io::parse_instance_text(text);
  CHECK(instances_equal(tri, again));
  // A canonical document survives emit(parse(.)) byte for byte.
  CHECK(io::emit_instance(again) == text);

  SUBCASE("elements are reordered by id on emission") {
    Instance shuffled = tri;
    std::swap(shuffled.elements[0], shuffled.elements[2]);
    std::swap(shuffled.intervals[0], shuffled.intervals[2]);
    auto& graph = std::get<MstFamily>(shuffled.family).graph;
    std::swap(graph.edges[0], graph.edges[2]);
    shuffled.index.clear();
    shuffled = validate_instance(std::move(shuffled));
    std::string canonical = io::emit_instance(shuffled);
    CHECK(canonical == text);
  }

  SUBCASE("every family kind round-trips") {
    std::mt19937 rng(314159);
    std::vector<Instance> zoo;
    zoo.push_back(random_mst_instance(rng, 3, 6, 8));
    zoo.push_back(random_graphic_instance(rng, 3, 6, 8));
    zoo.push_back(random_tree_matching_instance(rng, 7));
    zoo.push_back(random_uniform_instance(rng, 6, 3, 9, 6));
    zoo.push_back(sat3_to_stpath(CnfFormula{1, {{1, 1, 1}}}).instance);
    zoo.push_back(
        sat3_to_bipartite_matching(CnfFormula{1, {{1, 1, 1}}}, MatchingVariant::Exclusion)
            .instance);
    for (const Instance& inst : zoo) {
      Instance back = io::parse_instance_text(io::emit_instance(inst));
      CHECK(back.size() == inst.size());
      for (std::size_t i = 0; i < inst.size(); ++i) {
        std::size_t j = back.index_of(inst.elements[i]);
        CHECK(back.intervals[j].lo == inst.intervals[i].lo);
        CHECK(back.intervals[j].hi == inst.intervals[i].hi);
        CHECK(back.costs[j] == inst.costs[i]);
      }
      CHECK(back.objective == inst.objective);
      CHECK(back.family.index() == inst.family.index());
    }
  }
}

TEST_CASE("duplicate keys are rejected") {
  std::string text = R"({"vertices": 3, "vertices": 4, "family": {"kind": "mst"},
    "objective": "min", "elements": []})";
  CHECK(code_of([&] { io::parse_instance_text(text); }) == ErrorCode::ParseError);
}

TEST_CASE("floating point numbers are rejected") {
  std::string text = R"({
  "vertices": 2,
  "family": {"kind": "mst"},
  "objective": "min",
  "elements": [{"id": "a", "endpoints": [0, 1], "interval": [1.5, "2"]}]
})";
  try {
    io::parse_instance_text(text);
    FAIL("expected ParseError");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::ParseError);
    CHECK(std::string(error.what()).find("exact") != std::string::npos);
  }
}

TEST_CASE("validation failures carry the element diagnostics") {
  std::string text = R"({
  "vertices": 3,
  "family": {"kind": "mst"},
  "objective": "min",
  "elements": [
    {"id": "a", "endpoints": [0, 1], "interval": ["1", "1"]},
    {"id": "b", "endpoints": [1, 2], "interval": ["4", "2"]},
    {"id": "c", "endpoints": [0, 2], "interval": ["3", "5"]}
  ]
})";
  try {
    io::parse_instance_text(text);
    FAIL("expected IntervalInverted");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::IntervalInverted);
    CHECK(error.element() == "b");
  }
}

TEST_CASE("negative costs are legal") {
  std::string text = R"({
  "vertices": 2,
  "family": {"kind": "mst"},
  "objective": "min",
  "elements": [{"id": "a", "endpoints": [0, 1], "interval": ["1", "2"], "cost": "-1"}]
})";
  Instance inst = io::parse_instance_text(text);
  CHECK(inst.costs[0] == Rational(-1));
}

TEST_CASE("unknown and missing keys are rejected with context") {
  CHECK(code_of([] {
          io::parse_instance_text(R"({"vertices": 1, "family": {"kind": "mst"},
            "objective": "min", "elements": [], "extra": 1})");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          io::parse_instance_text(R"({"family": {"kind": "mst"},
            "objective": "min", "elements": []})");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          io::parse_instance_text(R"({"vertices": 1, "family": {"kind": "warp"},
            "objective": "min", "elements": []})");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::parse_instance_text("not json"); }) == ErrorCode::ParseError);
  // A uniform matroid has no vertices.
  CHECK(code_of([] {
          io::parse_instance_text(R"({"vertices": 1,
            "family": {"kind": "uniform-matroid", "rank": 1},
            "objective": "min",
            "elements": [{"id": "a", "interval": ["0", "1"]}]})");
        }) == ErrorCode::ParseError);
}

TEST_CASE("uniform matroid documents omit graph fields") {
  std::string text = R"({
  "family": {"kind": "uniform-matroid", "rank": 2},
  "objective": "min",
  "elements": [
    {"id": "a", "interval": ["1", "1"]},
    {"id": "b", "interval": ["2", "4"]},
    {"id": "c", "interval": ["3", "5"]}
  ]
})";
  Instance inst = io::parse_instance_text(text);
  const auto& fam = std::get<UniformMatroidFamily>(inst.family);
  CHECK(fam.rank == 2);
  CHECK(fam.size == 3);
  CHECK(inst.graph() == nullptr);
  CHECK(inst.costs[0] == Rational(1));  // default cost
}

TEST_CASE("threshold reports render colors consistent with classify") {
  Instance tri = tri_instance();
  ExactFamily engine(tri);
  std::vector<ThresholdPair> thresholds;
  for (std::size_t e = 0; e < tri.size(); ++e) {
    thresholds.push_back(engine.brute_force_thresholds(e));
  }
  io::ThresholdReport report = io::make_threshold_report(tri, thresholds);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].color == ElementColor::Trivial);
  CHECK(report.rows[1].color == ElementColor::Uncolored);
  CHECK(report.rows[2].color == ElementColor::Uncolored);
  for (std::size_t e = 0; e < tri.size(); ++e) {
    CHECK(report.rows[e].color == classify(tri.intervals[e], report.rows[e].thresholds));
  }

  std::string text = io::emit_threshold_report(report);
  CHECK(text.find("\"t_plus\": \"2\"") != std::string::npos);
  CHECK(text.find("\"t_minus\": \"4\"") != std::string::npos);
  CHECK(text.find("\"uncolored\"") != std::string::npos);
  CHECK(text.find("\"query\"") == std::string::npos);

  auto colors = color_all(tri, thresholds);
  QueryPlan plan = minimum_admissible_query(tri, colors);
  report.query = std::vector<ElementId>{"b", "c"};
  report.query_cost = plan.cost;
  std::string with_query = io::emit_threshold_report(report);
  CHECK(with_query.find("\"query\"") != std::string::npos);
  CHECK(with_query.find("\"cost\": \"2\"") != std::string::npos);

  CHECK(code_of([&] { io::make_threshold_report(tri, {}); }) ==
        ErrorCode::MissingThreshold);
}

TEST_CASE("infinite thresholds serialize as signed inf strings") {
  Instance path;
  path.elements = {"left", "right"};
  path.intervals = {{1, 2}, {3, 4}};
  path.costs = {1, 1};
  MstFamily fam;
  fam.graph.vertex_count = 3;
  fam.graph.edges = {{0, 1}, {1, 2}};
  path.family = fam;
  path.objective = Objective::Min;
  path = validate_instance(std::move(path));
  ExactFamily engine(path);
  std::vector<ThresholdPair> thresholds;
  for (std::size_t e = 0; e < path.size(); ++e) {
    thresholds.push_back(engine.brute_force_thresholds(e));
  }
  std::string text = io::emit_threshold_report(io::make_threshold_report(path, thresholds));
  CHECK(text.find("\"+inf\"") != std::string::npos);
}

TEST_CASE("DOT export is structurally sound") {
  Instance tri = tri_instance();
  ExactFamily engine(tri);
  std::vector<ThresholdPair> thresholds;
  for (std::size_t e = 0; e < tri.size(); ++e) {
    thresholds.push_back(engine.brute_force_thresholds(e));
  }
  auto colors = color_all(tri, thresholds);
  std::string dot = io::to_dot(tri, colors);

  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
  CHECK(dot.find(" -- ") != std::string::npos);
  CHECK(dot.find("[3,5]") != std::string::npos);
  CHECK(dot.find("gray") != std::string::npos);   // the trivial element
  CHECK(dot.find("black") != std::string::npos);  // uncolored elements

  SUBCASE("directed instances use arrows and mark the terminals") {
    GadgetInstance g = sat3_to_stpath(CnfFormula{1, {{1, 1, 1}}});
    std::string d = io::to_dot(g.instance);
    CHECK(d.rfind("digraph", 0) == 0);
    CHECK(d.find(" -> ") != std::string::npos);
    CHECK(d.find("doublecircle") != std::string::npos);
  }

  SUBCASE("color count mismatches are rejected") {
    CHECK(code_of([&] { io::to_dot(tri, {ElementColor::Blue}); }) ==
          ErrorCode::MissingThreshold);
  }

  SUBCASE("matroids have no drawing") {
    std::mt19937 rng(1);
    Instance uni = random_uniform_instance(rng, 3, 1, 5, 3);
    CHECK(code_of([&] { io::to_dot(uni); }) == ErrorCode::FamilyShapeMismatch);
  }
}

TEST_CASE("formula documents parse and validate") {
  CnfFormula phi = io::parse_formula_text(R"({"vars": 2, "clauses": [[1, -2, 1]]})");
  CHECK(phi.variable_count == 2);
  REQUIRE(phi.clauses.size() == 1);
  CHECK(phi.clauses[0] == std::array<int, 3>{1, -2, 1});

  CHECK(code_of([] {
          io::parse_formula_text(R"({"vars": 1, "clauses": [[1, 1]]})");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          io::parse_formula_text(R"({"clauses": [[1, 1, 1]]})");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          io::parse_formula_text(R"({"vars": 1, "clauses": [[1, 1, 1.5]]})");
        }) == ErrorCode::ParseError);
  // Literal ranges are the consumer's concern, not the parser's.
  CnfFormula loose = io::parse_formula_text(R"({"vars": 1, "clauses": [[1, 1, 2]]})");
  CHECK(code_of([&] { formula_satisfiable(loose); }) == ErrorCode::ParseError);
}

TEST_CASE("reveal documents map ids to exact values") {
  auto reveal = io::parse_reveal_text(R"({"b": "4", "c": "3.5"})");
  CHECK(reveal.size() == 2);
  CHECK(reveal.at("b") == Rational(4));
  CHECK(reveal.at("c") == Rational(7, 2));
  CHECK(code_of([] { io::parse_reveal_text(R"({"b": 1.25})"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::parse_reveal_text(R"(["b"])") ; }) == ErrorCode::ParseError);
}

TEST_CASE("bracket reports carry both searches") {
  Instance tri = tri_instance();
  AdmissibilityOracle oracle = make_semantic_admissibility_oracle();
  ApproxThresholds approx =
      approximate_threshold_via_queries(tri, 2, Rational(1, 8), oracle);
  std::string text = io::emit_bracket_report(tri, 2, approx);
  CHECK(text.find("\"element\": \"c\"") != std::string::npos);
  CHECK(text.find("\"bracket\"") != std::string::npos);
  CHECK(text.find("\"iterations\"") != std::string::npos);
}

TEST_CASE("query plans and solutions serialize by element id") {
  Instance tri = tri_instance();
  ExactFamily engine(tri);
  std::vector<ThresholdPair> thresholds;
  for (std::size_t e = 0; e < tri.size(); ++e) {
    thresholds.push_back(engine.brute_force_thresholds(e));
  }
  auto colors = color_all(tri, thresholds);
  QueryPlan plan = minimum_admissible_query(tri, colors);
  std::string text = io::emit_query_plan(tri, plan);
  CHECK(text.find("\"b\"") != std::string::npos);
  CHECK(text.find("\"c\"") != std::string::npos);
  CHECK(text.find("\"cost\": \"2\"") != std::string::npos);

  std::string sol = io::emit_solution(tri, {0, 2});
  CHECK(sol.find("\"a\"") != std::string::npos);
  CHECK(sol.find("\"c\"") != std::string::npos);
  CHECK(sol.find("\"b\"") == std::string::npos);
}

TEST_CASE("file round trip") {
  Instance tri = tri_instance();
  const std::string path = "io_roundtrip_fixture.json";
  io::write_file(path, io::emit_instance(tri));
  Instance back = io::parse_instance(path);
  CHECK(instances_equal(tri, back));
  CHECK(code_of([] { io::read_file("does_not_exist_anywhere.json"); }) ==
        ErrorCode::ParseError);
}
