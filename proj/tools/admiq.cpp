// Command-line front end. All computations run in the minimization
// convention: a Max instance is negated on the way in (and reveal values
// with it), so reports always describe the min form. Exit codes: 0 success,
// 2 usage, 3 parse or validation failure, 4 an exact backend refused the
// size, 5 verification mismatch.

#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "admiq/errors.hpp"
#include "admiq/io.hpp"
#include "admiq/matroid.hpp"
#include "admiq/mst.hpp"
#include "admiq/oracle.hpp"
#include "admiq/query.hpp"
#include "admiq/rational.hpp"
#include "admiq/reductions.hpp"
#include "admiq/tree_matching.hpp"
#include "admiq/types.hpp"

namespace {

using namespace admiq;
using nlohmann::ordered_json;

struct UsageError {
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooLarge:
    case ErrorCode::TooManyFreeIntervals:
    case ErrorCode::TooManySolutions:
      return 4;
    case ErrorCode::OracleFailure:
      return 5;
    default:
      return 3;
  }
}

Instance to_min_form(const Instance& inst) {
  return inst.objective == Objective::Max ? negate_for_maximization(inst) : inst;
}

bool has_fast_route(const Instance& inst) {
  return std::holds_alternative<MstFamily>(inst.family) ||
         std::holds_alternative<UniformMatroidFamily>(inst.family) ||
         std::holds_alternative<GraphicMatroidFamily>(inst.family) ||
         std::holds_alternative<TreeMatchingFamily>(inst.family);
}

// Family-specific thresholds of a min-form instance.
std::vector<ThresholdPair> fast_thresholds(const Instance& min_form) {
  if (std::holds_alternative<MstFamily>(min_form.family)) {
    return mst::mst_thresholds(min_form);
  }
  if (std::holds_alternative<UniformMatroidFamily>(min_form.family) ||
      std::holds_alternative<GraphicMatroidFamily>(min_form.family)) {
    return matroid::matroid_thresholds_all(min_form);
  }
  if (std::holds_alternative<TreeMatchingFamily>(min_form.family)) {
    Instance max_form = negate_for_minimization(min_form);
    std::vector<ThresholdPair> out;
    out.reserve(min_form.size());
    for (std::size_t e = 0; e < min_form.size(); ++e) {
      out.push_back(tree_thresholds_fixed_edge(max_form, e).min_convention);
    }
    return out;
  }
  throw UsageError{"no fast threshold routine for this family; use --method brute or --method solutions"};
}

std::vector<ThresholdPair> brute_thresholds(const Instance& min_form) {
  oracle::ExactFamily engine(min_form);
  std::vector<ThresholdPair> out;
  out.reserve(min_form.size());
  for (std::size_t e = 0; e < min_form.size(); ++e) {
    out.push_back(engine.brute_force_thresholds(e));
  }
  return out;
}

// Route used by query/resolve, which need every threshold anyway.
std::vector<ThresholdPair> best_thresholds(const Instance& min_form) {
  return has_fast_route(min_form) ? fast_thresholds(min_form) : brute_thresholds(min_form);
}

struct ThresholdsArgs {
  std::string input;
  std::string element;
  std::string method = "fast";
  std::string delta;
  std::string dot_path;
  bool with_query = false;
};

int run_thresholds(const ThresholdsArgs& args) {
  Instance original = io::parse_instance(args.input);
  Instance min_form = to_min_form(original);

  if (args.method == "binary") {
    if (args.element.empty() || args.delta.empty()) {
      throw UsageError{"--method binary needs --element and --delta"};
    }
    if (args.with_query) {
      throw UsageError{"--with-query does not apply to --method binary"};
    }
    Rational delta = parse_rational(args.delta);
    if (delta <= 0) throw UsageError{"--delta must be positive"};
    std::size_t index = min_form.index_of(args.element);
    ApproxThresholds approx = approximate_threshold_via_queries(
        min_form, index, delta, make_semantic_admissibility_oracle());
    std::cout << io::emit_bracket_report(min_form, index, approx);
    if (!args.dot_path.empty()) {
      io::write_file(args.dot_path, io::to_dot(original));
    }
    return 0;
  }

  if (args.with_query && !args.element.empty()) {
    throw UsageError{"--with-query reports the whole instance; drop --element"};
  }

  std::optional<std::size_t> only;
  if (!args.element.empty()) only = min_form.index_of(args.element);

  std::vector<ThresholdPair> pairs;
  if (args.method == "fast") {
    pairs = fast_thresholds(min_form);
  } else if (args.method == "brute") {
    oracle::ExactFamily engine(min_form);
    pairs.resize(min_form.size(), ThresholdPair{ExtendedWeight(0), ExtendedWeight(0)});
    if (only) {
      pairs[*only] = engine.brute_force_thresholds(*only);
    } else {
      for (std::size_t e = 0; e < min_form.size(); ++e) {
        pairs[e] = engine.brute_force_thresholds(e);
      }
    }
  } else {  // solutions
    oracle::ExactFamily engine(min_form);
    pairs.resize(min_form.size(), ThresholdPair{ExtendedWeight(0), ExtendedWeight(0)});
    if (only) {
      pairs[*only] = engine.thresholds_via_solution_enumeration(*only);
    } else {
      for (std::size_t e = 0; e < min_form.size(); ++e) {
        pairs[e] = engine.thresholds_via_solution_enumeration(e);
      }
    }
  }

  io::ThresholdReport report;
  if (only) {
    report.rows.push_back({min_form.elements[*only], pairs[*only],
                           classify(min_form.intervals[*only], pairs[*only])});
  } else {
    report = io::make_threshold_report(min_form, pairs);
  }

  std::vector<ElementColor> colors;
  if (!only) colors = color_all(min_form, pairs);

  if (args.with_query) {
    QueryPlan plan = minimum_admissible_query(min_form, colors);
    std::vector<ElementId> ids;
    ids.reserve(plan.query.size());
    for (std::size_t index : plan.query) ids.push_back(min_form.elements[index]);
    report.query = std::move(ids);
    report.query_cost = plan.cost;
  }

  std::cout << io::emit_threshold_report(report);
  if (!args.dot_path.empty()) {
    io::write_file(args.dot_path, io::to_dot(original, colors));
  }
  return 0;
}

int run_query(const std::string& input) {
  Instance min_form = to_min_form(io::parse_instance(input));
  std::vector<ThresholdPair> pairs = best_thresholds(min_form);
  std::vector<ElementColor> colors = color_all(min_form, pairs);
  QueryPlan plan = minimum_admissible_query(min_form, colors);
  std::cout << io::emit_query_plan(min_form, plan);
  return 0;
}

int run_resolve(const std::string& input, const std::string& revealed_path) {
  Instance original = io::parse_instance(input);
  Instance min_form = to_min_form(original);
  bool negated = original.objective == Objective::Max;

  std::unordered_map<std::size_t, Rational> revealed;
  for (auto& [id, value] : io::parse_reveal(revealed_path)) {
    revealed[min_form.index_of(id)] = negated ? Rational(-value) : value;
  }

  std::vector<ThresholdPair> pairs = best_thresholds(min_form);
  std::vector<ElementColor> colors = color_all(min_form, pairs);
  std::vector<std::size_t> solution = resolve(min_form, colors, revealed);
  std::cout << io::emit_solution(original, solution);
  return 0;
}

ordered_json pair_json(const ThresholdPair& pair) {
  ordered_json out;
  out["t_plus"] = format_extended(pair.t_plus);
  out["t_minus"] = format_extended(pair.t_minus);
  return out;
}

int run_verify(const std::string& input) {
  Instance min_form = to_min_form(io::parse_instance(input));
  bool fast = has_fast_route(min_form);

  std::vector<ThresholdPair> reference = brute_thresholds(min_form);
  std::vector<ThresholdPair> other;
  if (fast) {
    other = fast_thresholds(min_form);
  } else {
    oracle::ExactFamily engine(min_form);
    other.reserve(min_form.size());
    for (std::size_t e = 0; e < min_form.size(); ++e) {
      other.push_back(engine.thresholds_via_solution_enumeration(e));
    }
  }

  auto mismatches = ordered_json::array();
  for (std::size_t e = 0; e < min_form.size(); ++e) {
    if (reference[e].t_plus == other[e].t_plus &&
        reference[e].t_minus == other[e].t_minus) {
      continue;
    }
    ordered_json row;
    row["element"] = min_form.elements[e];
    row["brute"] = pair_json(reference[e]);
    row[fast ? "fast" : "solutions"] = pair_json(other[e]);
    mismatches.push_back(std::move(row));
  }

  ordered_json doc;
  doc["method"] = fast ? "fast" : "solutions";
  doc["elements"] = min_form.size();
  doc["mismatches"] = std::move(mismatches);
  std::cout << doc.dump(2) << "\n";
  return doc["mismatches"].empty() ? 0 : 5;
}

struct ReduceArgs {
  std::string kind;
  std::string input;
  std::string out;
  std::string variant = "exclusion";
  std::string dot_path;
  bool check = false;
};

int run_reduce(const ReduceArgs& args) {
  GadgetInstance gadget;
  if (args.kind == "sat3-path") {
    gadget = sat3_to_stpath(io::parse_formula(args.input));
  } else if (args.kind == "sat3-matching") {
    auto variant = args.variant == "inclusion" ? MatchingVariant::Inclusion
                                               : MatchingVariant::Exclusion;
    gadget = sat3_to_bipartite_matching(io::parse_formula(args.input), variant);
  } else {  // ham-path
    Instance host = io::parse_instance(args.input);
    const auto* family = std::get_if<StPathFamily>(&host.family);
    if (!family) {
      throw UsageError{"ham-path input must be an st-path instance; its source and target name the endpoints"};
    }
    gadget = hampath_to_stpath(family->graph, family->source, family->target);
  }

  io::write_file(args.out, io::emit_instance(gadget.instance));
  if (!args.dot_path.empty()) {
    io::write_file(args.dot_path, io::to_dot(gadget.instance));
  }

  ordered_json doc;
  doc["out"] = args.out;
  doc["vertices"] = gadget.instance.graph()->vertex_count;
  doc["elements"] = gadget.instance.size();
  doc["target"] = gadget.target;
  doc["claim"] = gadget.claim.text;

  if (!args.check) {
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  GadgetReport report = verify_gadget(gadget);
  doc["t_plus"] = format_extended(report.solution_scan.t_plus);
  doc["t_minus"] = format_extended(report.solution_scan.t_minus);
  if (report.realization_scan) {
    doc["realization_scan"] = pair_json(*report.realization_scan);
  } else {
    doc["realization_scan"] = nullptr;
  }
  if (report.oracles_agree) {
    doc["oracles_agree"] = *report.oracles_agree;
  } else {
    doc["oracles_agree"] = nullptr;
  }
  doc["claim_holds"] = report.claim_holds;
  doc["notes"] = report.notes;
  std::cout << doc.dump(2) << "\n";

  bool ok = report.claim_holds && report.oracles_agree.value_or(true);
  return ok ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thresholds, query plans and hardness gadgets for optimization under interval uncertainty"};
  app.require_subcommand(1);

  ThresholdsArgs thresholds_args;
  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Compute element thresholds and colors");
  thresholds->add_option("--input", thresholds_args.input, "instance JSON file")
      ->required();
  thresholds->add_option("--element", thresholds_args.element,
                         "restrict the report to one element id");
  thresholds
      ->add_option("--method", thresholds_args.method,
                   "fast | brute | solutions | binary")
      ->check(CLI::IsMember({"fast", "brute", "solutions", "binary"}));
  thresholds->add_option("--delta", thresholds_args.delta,
                         "bracket width for --method binary, an exact rational");
  thresholds->add_flag("--with-query", thresholds_args.with_query,
                       "append the minimum admissible query to the report");
  thresholds->add_option("--dot", thresholds_args.dot_path,
                         "write a DOT rendering (colored unless --element/--method binary)");

  std::string query_input;
  CLI::App* query_cmd = app.add_subcommand("query", "Compute the minimum admissible query");
  query_cmd->add_option("--input", query_input, "instance JSON file")->required();

  std::string resolve_input;
  std::string resolve_revealed;
  CLI::App* resolve_cmd = app.add_subcommand(
      "resolve", "Universally optimal solution after revealing the query");
  resolve_cmd->add_option("--input", resolve_input, "instance JSON file")->required();
  resolve_cmd
      ->add_option("--revealed", resolve_revealed,
                   "JSON file mapping queried element ids to revealed weights")
      ->required();

  std::string verify_input;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Cross-check the family routine against the exact oracle");
  verify_cmd->add_option("--input", verify_input, "instance JSON file")->required();

  ReduceArgs reduce_args;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "Emit a hardness gadget instance");
  reduce_cmd->add_option("kind", reduce_args.kind, "sat3-path | sat3-matching | ham-path")
      ->required()
      ->check(CLI::IsMember({"sat3-path", "sat3-matching", "ham-path"}));
  reduce_cmd
      ->add_option("--input", reduce_args.input,
                   "formula JSON (sat3-*) or st-path instance JSON (ham-path)")
      ->required();
  reduce_cmd->add_option("--out", reduce_args.out, "path for the gadget instance JSON")
      ->required();
  reduce_cmd->add_option("--variant", reduce_args.variant, "exclusion | inclusion")
      ->check(CLI::IsMember({"exclusion", "inclusion"}));
  reduce_cmd->add_option("--dot", reduce_args.dot_path, "write a DOT rendering of the gadget");
  reduce_cmd->add_flag("--check", reduce_args.check,
                       "run the oracle over the gadget and report whether the claim holds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (thresholds->parsed()) return run_thresholds(thresholds_args);
    if (query_cmd->parsed()) return run_query(query_input);
    if (resolve_cmd->parsed()) return run_resolve(resolve_input, resolve_revealed);
    if (verify_cmd->parsed()) return run_verify(verify_input);
    if (reduce_cmd->parsed()) return run_reduce(reduce_args);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}
