#include "admiq/query.hpp"

#include <algorithm>

#include "admiq/errors.hpp"
#include "admiq/oracle.hpp"

namespace admiq {
namespace {

void check_colors(const Instance& inst, const std::vector<ElementColor>& colors) {
  if (colors.size() != inst.size()) {
    fail(ErrorCode::MissingThreshold, "expected one color per element");
  }
}

void check_min(const Instance& inst, const char* what) {
  if (inst.objective != Objective::Min) {
    fail(ErrorCode::FamilyShapeMismatch,
         std::string(what) + " requires a Min objective; negate maximization "
                             "instances first");
  }
}

std::vector<char> query_flags(const Instance& inst,
                              const std::vector<ElementColor>& colors) {
  std::vector<char> flags(inst.size(), 0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (colors[i] == ElementColor::Uncolored || inst.costs[i] < 0) flags[i] = 1;
  }
  return flags;
}

}  // namespace

std::vector<ElementColor> color_all(const Instance& inst,
                                    const std::vector<ThresholdPair>& thresholds) {
  if (thresholds.size() != inst.size()) {
    fail(ErrorCode::MissingThreshold, "expected one threshold pair per element");
  }
  std::vector<ElementColor> colors(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    colors[i] = classify(inst.intervals[i], thresholds[i]);
  }
  return colors;
}

QueryPlan minimum_admissible_query(const Instance& inst,
                                   const std::vector<ElementColor>& colors) {
  check_colors(inst, colors);
  QueryPlan plan;
  plan.colors = colors;
  const std::vector<char> flags = query_flags(inst, colors);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!flags[i]) continue;
    plan.query.push_back(i);
    plan.cost += inst.costs[i];
  }
  return plan;
}

bool is_admissible_via_thresholds(const Instance& inst,
                                  const std::vector<ElementColor>& colors,
                                  const std::vector<std::size_t>& query) {
  check_colors(inst, colors);
  std::vector<char> in_query(inst.size(), 0);
  for (std::size_t e : query) {
    if (e >= inst.size()) fail(ErrorCode::UnknownElement, "query index out of range");
    in_query[e] = 1;
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (colors[i] == ElementColor::Uncolored && !in_query[i]) return false;
  }
  return true;
}

std::vector<std::size_t> resolve(
    const Instance& inst, const std::vector<ElementColor>& colors,
    const std::unordered_map<std::size_t, Rational>& revealed) {
  check_min(inst, "resolution");
  check_colors(inst, colors);
  const std::vector<char> flags = query_flags(inst, colors);
  for (const auto& [e, value] : revealed) {
    if (e >= inst.size()) fail(ErrorCode::UnknownElement, "revealed index out of range");
    if (!flags[e]) {
      fail(ErrorCode::RevealUnexpected,
           "element " + inst.elements[e] + " is not part of the query");
    }
    if (value < inst.intervals[e].lo || value > inst.intervals[e].hi) {
      fail(ErrorCode::RevealOutOfInterval,
           "revealed weight of " + inst.elements[e] + " is outside its interval");
    }
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (flags[i] && revealed.find(i) == revealed.end()) {
      fail(ErrorCode::RevealMissing,
           "queried element " + inst.elements[i] + " has no revealed weight");
    }
  }

  // Big-M over the known values and the colored intervals; colored elements
  // take -M / +M even when they were queried for their negative cost.
  Rational big_m;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (colors[i] == ElementColor::Blue || colors[i] == ElementColor::Red) {
      big_m += rational_abs(inst.intervals[i].lo) + rational_abs(inst.intervals[i].hi);
    } else if (colors[i] == ElementColor::Uncolored) {
      big_m += rational_abs(revealed.at(i));
    } else {
      big_m += rational_abs(inst.intervals[i].lo);
    }
  }

  std::vector<Rational> weights(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    switch (colors[i]) {
      case ElementColor::Blue:
        weights[i] = -big_m;
        break;
      case ElementColor::Red:
        weights[i] = big_m;
        break;
      case ElementColor::Trivial:
        weights[i] = inst.intervals[i].lo;
        break;
      case ElementColor::Uncolored:
        weights[i] = revealed.at(i);
        break;
    }
  }

  const oracle::ExactFamily engine(inst);
  SolveResult result = engine.solve(weights, free_constraint());
  if (!result.solution) {
    fail(ErrorCode::NoFeasibleSet, "the family has no feasible set");
  }
  return *std::move(result.solution);
}

ApproxThresholds approximate_threshold_via_queries(
    const Instance& inst, std::size_t element, const Rational& delta,
    const AdmissibilityOracle& oracle_fn) {
  check_min(inst, "threshold approximation");
  if (element >= inst.size()) {
    fail(ErrorCode::UnknownElement, "element index out of range");
  }
  if (delta <= 0) {
    fail(ErrorCode::InvalidRealization, "the precision must be positive");
  }

  // Forced far below (resp. above) every other total, the element joins the
  // optimum exactly when some feasible set contains (resp. avoids) it, so
  // two exact solves settle the infinite cases.
  Rational total;
  for (const auto& interval : inst.intervals) {
    total += rational_abs(interval.lo) + rational_abs(interval.hi);
  }
  const Rational far = total + 1;
  std::vector<Rational> weights(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) weights[i] = inst.intervals[i].lo;
  const oracle::ExactFamily engine(inst);

  const auto contains = [&](const SolveResult& result) {
    if (!result.solution) {
      fail(ErrorCode::NoFeasibleSet, "the family has no feasible set");
    }
    return std::binary_search(result.solution->begin(), result.solution->end(),
                              element);
  };
  weights[element] = -far;
  if (!contains(engine.solve(weights, free_constraint()))) {
    ThresholdBracket forbidden{ThresholdBracket::Kind::MinusInfinity, {}, {}, 0};
    return {forbidden, forbidden};
  }
  weights[element] = far;
  if (contains(engine.solve(weights, free_constraint()))) {
    ThresholdBracket mandatory{ThresholdBracket::Kind::PlusInfinity, {}, {}, 0};
    return {mandatory, mandatory};
  }

  Rational bound;  // both thresholds lie in [-bound, bound]
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i == element) continue;
    bound += rational_abs(inst.intervals[i].lo) + rational_abs(inst.intervals[i].hi);
  }
  if (bound == 0) {
    ThresholdBracket pinned{ThresholdBracket::Kind::Bracket, Rational(), Rational(), 0};
    return {pinned, pinned};
  }

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i != element) others.push_back(i);
  }
  Instance probe = inst;

  // Revealing everything else is admissible iff the element is colored for
  // every revelation. With the probe interval's other end pushed past every
  // attainable threshold, that reduces to comparing alpha against one
  // threshold bound, which the bisection pins down.
  const auto bisect = [&](bool upper) {
    ThresholdBracket bracket;
    bracket.lo = -bound;
    bracket.hi = bound;
    while (bracket.hi - bracket.lo > delta) {
      const Rational mid = (bracket.lo + bracket.hi) / 2;
      probe.intervals[element] = upper
                                     ? UncertaintyInterval{-bound - 1, mid}
                                     : UncertaintyInterval{mid, bound + 1};
      const bool admissible = oracle_fn(probe, others);
      if (upper) {
        (admissible ? bracket.lo : bracket.hi) = mid;
      } else {
        (admissible ? bracket.hi : bracket.lo) = mid;
      }
      ++bracket.iterations;
    }
    return bracket;
  };

  ApproxThresholds out{bisect(true), bisect(false)};
  return out;
}

AdmissibilityOracle make_semantic_admissibility_oracle() {
  return [](const Instance& inst, const std::vector<std::size_t>& query) {
    return oracle::is_admissible_semantic(inst, query);
  };
}

AdmissibilityOracle make_threshold_admissibility_oracle(
    std::function<std::vector<ThresholdPair>(const Instance&)> thresholds) {
  return [fn = std::move(thresholds)](const Instance& inst,
                                      const std::vector<std::size_t>& query) {
    const std::vector<ThresholdPair> pairs = fn(inst);
    const std::vector<ElementColor> colors = color_all(inst, pairs);
    return is_admissible_via_thresholds(inst, colors, query);
  };
}

}  // namespace admiq
