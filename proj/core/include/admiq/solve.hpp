#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "admiq/rational.hpp"

namespace admiq {

inline constexpr std::size_t kNoElement = static_cast<std::size_t>(-1);

// Constrains one optimization run: Free, or force one element in or out.
struct SolveConstraint {
  enum class Kind { Free, Include, Exclude };
  Kind kind = Kind::Free;
  std::size_t element = kNoElement;
};

inline SolveConstraint free_constraint() { return {}; }
inline SolveConstraint include_element(std::size_t e) {
  return {SolveConstraint::Kind::Include, e};
}
inline SolveConstraint exclude_element(std::size_t e) {
  return {SolveConstraint::Kind::Exclude, e};
}

// Exact optimum and a witness. value is +inf iff no feasible set satisfies
// the constraint, in which case solution is absent. Witness indices are
// ascending element indices; ties are broken deterministically by the
// backend's enumeration order.
struct SolveResult {
  ExtendedWeight value;
  std::optional<std::vector<std::size_t>> solution;
};

}  // namespace admiq
