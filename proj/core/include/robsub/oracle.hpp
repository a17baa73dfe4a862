#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/types.hpp"

namespace robsub {

// Cap on exhaustive work. Enumeration refuses universes whose power set
// exceeds max_sets and checks the wall clock between blocks.
struct OracleBudget {
  std::int64_t max_sets = std::int64_t{1} << 20;
  double timeout_seconds = 60.0;
};

// Every feasible set of the family, in ascending bitmask order (element 0 is
// the lowest bit).
std::vector<ElementSet> enumerate_feasible(const ConstraintFamily& c,
                                           const OracleBudget& budget = {});

struct OracleSolution {
  ElementSet set;
  double value = 0.0;
  std::int64_t feasible_count = 0;
};

// Exact reference solvers by exhaustive enumeration. Value ties are broken
// toward the lexicographically smallest id sequence.
OracleSolution brute_force_min_max(std::span<const SetFunctionHandle> fs,
                                   const ConstraintFamily& c, const OracleBudget& budget = {});
OracleSolution brute_force_max_min(std::span<const SetFunctionHandle> gs,
                                   const ConstraintFamily& c, const OracleBudget& budget = {});
// min max_i f_i subject to g_i(S) >= targets[i] for every i.
OracleSolution brute_force_min_max_covering(std::span<const SetFunctionHandle> fs,
                                            std::span<const SetFunctionHandle> gs,
                                            std::span<const double> targets,
                                            const OracleBudget& budget = {});
// max min_i g_i subject to f_i(S) <= budgets[i] for every i.
OracleSolution brute_force_max_min_budgeted(std::span<const SetFunctionHandle> fs,
                                            std::span<const SetFunctionHandle> gs,
                                            std::span<const double> budgets,
                                            const OracleBudget& budget = {});

}  // namespace robsub
