#include "admiq/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "admiq/errors.hpp"

namespace admiq::matroid {

namespace {

constexpr std::size_t kMaxGroundSize = 10'000;

void check_oracle(const IndependenceOracle& oracle, std::size_t weight_count) {
  if (oracle.ground_size > kMaxGroundSize) {
    fail(ErrorCode::TooLarge, "ground set exceeds the greedy cap of " +
                                  std::to_string(kMaxGroundSize));
  }
  if (weight_count != oracle.ground_size) {
    fail(ErrorCode::InvalidRealization, "expected one weight per ground element");
  }
}

}  // namespace

IndependenceOracle uniform_oracle(int rank, int size) {
  IndependenceOracle o;
  o.ground_size = static_cast<std::size_t>(size);
  o.is_independent = [rank](const std::vector<char>& members) {
    int count = 0;
    for (char m : members) count += m != 0;
    return count <= rank;
  };
  return o;
}

IndependenceOracle graphic_oracle(Graph g) {
  IndependenceOracle o;
  o.ground_size = g.edges.size();
  o.is_independent = [g = std::move(g)](const std::vector<char>& members) {
    std::vector<int> parent(g.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!members[i]) continue;
      int a = find(g.edges[i].u);
      int b = find(g.edges[i].v);
      if (a == b) return false;  // cycle
      parent[a] = b;
    }
    return true;
  };
  return o;
}

SolveResult greedy_min_basis(const IndependenceOracle& oracle,
                             const std::vector<Rational>& weights,
                             const SolveConstraint& con) {
  check_oracle(oracle, weights.size());
  const std::size_t n = oracle.ground_size;
  if (con.kind != SolveConstraint::Kind::Free && con.element >= n) {
    fail(ErrorCode::UnknownElement, "constraint element index out of range");
  }
  std::vector<char> members(n, 0);
  std::vector<std::size_t> picked;
  Rational value = 0;
  if (con.kind == SolveConstraint::Kind::Include) {
    members[con.element] = 1;
    if (!oracle.is_independent(members)) {
      fail(ErrorCode::NotIndependentSingleton,
           "the forced element is a loop; no basis contains it");
    }
    picked.push_back(con.element);
    value += weights[con.element];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weights[a] != weights[b]) return weights[a] < weights[b];
    return a < b;
  });
  for (std::size_t idx : order) {
    if (con.kind != SolveConstraint::Kind::Free && idx == con.element) continue;
    members[idx] = 1;
    if (oracle.is_independent(members)) {
      picked.push_back(idx);
      value += weights[idx];
    } else {
      members[idx] = 0;
    }
  }
  if (con.kind == SolveConstraint::Kind::Exclude) {
    // The result is maximal within the deleted matroid; if the excluded
    // element still extends it, it was a coloop and no basis avoids it.
    members[con.element] = 1;
    if (oracle.is_independent(members)) {
      return {ExtendedWeight::plus_infinity(), std::nullopt};
    }
    members[con.element] = 0;
  }
  std::sort(picked.begin(), picked.end());
  return {ExtendedWeight(value), std::move(picked)};
}

ThresholdPair matroid_thresholds(const IndependenceOracle& oracle,
                                 const std::vector<UncertaintyInterval>& intervals,
                                 std::size_t element) {
  check_oracle(oracle, intervals.size());
  if (element >= oracle.ground_size) {
    fail(ErrorCode::UnknownElement, "element index out of range");
  }
  {
    std::vector<char> single(oracle.ground_size, 0);
    single[element] = 1;
    if (!oracle.is_independent(single)) {
      return make_threshold_pair(ExtendedWeight::minus_infinity(),
                                 ExtendedWeight::minus_infinity());
    }
  }
  auto threshold = [&](std::vector<Rational> w) -> ExtendedWeight {
    SolveResult without = greedy_min_basis(oracle, w, exclude_element(element));
    if (without.value.is_plus_infinity()) return ExtendedWeight::plus_infinity();
    w[element] = 0;
    SolveResult with = greedy_min_basis(oracle, w, include_element(element));
    return ExtendedWeight(without.value.finite_value() - with.value.finite_value());
  };
  std::vector<Rational> lo(intervals.size()), hi(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    lo[i] = intervals[i].lo;
    hi[i] = intervals[i].hi;
  }
  ExtendedWeight t_plus = threshold(std::move(lo));
  if (t_plus.is_plus_infinity()) {
    return make_threshold_pair(ExtendedWeight::plus_infinity(),
                               ExtendedWeight::plus_infinity());
  }
  ExtendedWeight t_minus = threshold(std::move(hi));
  return make_threshold_pair(t_plus, t_minus);
}

std::vector<ThresholdPair> matroid_thresholds_all(const Instance& inst) {
  if (inst.objective != Objective::Min) {
    fail(ErrorCode::FamilyShapeMismatch,
         "thresholds require a Min objective; negate maximization instances first");
  }
  IndependenceOracle oracle;
  if (const auto* u = std::get_if<UniformMatroidFamily>(&inst.family)) {
    oracle = uniform_oracle(u->rank, u->size);
  } else if (const auto* g = std::get_if<GraphicMatroidFamily>(&inst.family)) {
    oracle = graphic_oracle(g->graph);
  } else {
    fail(ErrorCode::FamilyShapeMismatch,
         "instance family is not a uniform or graphic matroid");
  }
  std::vector<ThresholdPair> out;
  out.reserve(inst.size());
  for (std::size_t e = 0; e < inst.size(); ++e) {
    out.push_back(matroid_thresholds(oracle, inst.intervals, e));
  }
  return out;
}

}  // namespace admiq::matroid
