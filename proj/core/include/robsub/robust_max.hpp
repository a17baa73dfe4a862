#pragma once

#include <span>
#include <string>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/types.hpp"

namespace robsub {

// Relaxation targets for bicriteria maximization: the returned value aims at
// (1 - eps) of the best achievable, in exchange for a bounded constraint
// blowup.
struct BicriteriaTarget {
  double eps = 0.1;
  double value_fraction() const { return 1.0 - eps; }
};

struct SaturateOptions {
  int max_bisections = 60;
};

// Gain-per-cost greedy with lazy revalidation; ties break toward the lower
// element id. Stops once h(S) >= target - 1e-9; throws CoverageError when
// even the full set cannot reach the target.
ElementSet greedy_cover(const SetFunctionHandle& h, double target, std::span<const double> cost);

struct SaturateResult {
  ElementSet set;
  double worst_value = 0.0;          // min_i g_i(set)
  double achieved_target = 0.0;      // largest accepted saturation level
  std::vector<double> per_function;
  int relaxed_budget = 0;            // k * ceil(ln(l / eps))
  int bisections = 0;
};

// Bisect the saturation level c in [0, min_i g_i(V)]: at each level cover
// the mean of the c-truncated functions to c with unit costs, accepting
// levels whose cover fits k * ceil(ln(l / eps)) elements. Returns the cover
// of the largest accepted level.
SaturateResult saturate_robust_max(std::span<const SetFunctionHandle> gs, int k, double eps,
                                   const SaturateOptions& opts = {});

enum class KnapsackReduction { ModMax, Avg, Both };

struct KnapsackViolationReport {
  std::vector<double> ratios;  // w_i(set) / b_i per knapsack
  double max_ratio = 0.0;
  double allowed = 0.0;        // declared ceiling: (#knapsacks) * ln(#functions / eps)
};

struct MultiKnapsackResult {
  ElementSet set;
  double worst_value = 0.0;      // min_i g_i(set)
  double achieved_target = 0.0;
  KnapsackViolationReport violation;
  KnapsackReduction reduction_used = KnapsackReduction::ModMax;
  int bisections = 0;
};

// Fold the normalized knapsacks (weights / budget) into one cost vector by
// per-element max or mean, then saturate against that single cost: a level
// is accepted when its cover costs at most ln(l / eps) under the folded
// weights. Covers run to the full target and the violation is measured
// afterwards, never pre-truncated. With Both, the candidate with the larger
// worst value among those inside the declared violation ceiling wins.
MultiKnapsackResult multiknapsack_robust_max(std::span<const SetFunctionHandle> gs,
                                             std::span<const Knapsack> knapsacks, double eps,
                                             KnapsackReduction reduction = KnapsackReduction::Both,
                                             const SaturateOptions& opts = {});

}  // namespace robsub
