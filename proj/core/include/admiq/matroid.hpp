#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "admiq/rational.hpp"
#include "admiq/solve.hpp"
#include "admiq/types.hpp"

namespace admiq::matroid {

// Matroid given by a membership-flag independence predicate. The predicate
// must be hereditary and satisfy the exchange property; both are assumed,
// not verified.
struct IndependenceOracle {
  std::size_t ground_size = 0;
  std::function<bool(const std::vector<char>&)> is_independent;
};

IndependenceOracle uniform_oracle(int rank, int size);
IndependenceOracle graphic_oracle(Graph g);

// Minimum-weight basis by the greedy rule, ties by element id. Include(e)
// forces e first and throws NotIndependentSingleton if e is a loop;
// Exclude(e) deletes e and reports value +inf if e is a coloop.
SolveResult greedy_min_basis(const IndependenceOracle& oracle,
                             const std::vector<Rational>& weights,
                             const SolveConstraint& con);

// t_plus at the all-lower realization, t_minus at the all-upper one; valid
// because the basis-difference threshold is monotone in every other weight.
// Loops map to (-inf,-inf), coloops to (+inf,+inf).
ThresholdPair matroid_thresholds(const IndependenceOracle& oracle,
                                 const std::vector<UncertaintyInterval>& intervals,
                                 std::size_t element);

// Per-element thresholds of a UniformMatroid or GraphicMatroid instance.
std::vector<ThresholdPair> matroid_thresholds_all(const Instance& inst);

}  // namespace admiq::matroid
