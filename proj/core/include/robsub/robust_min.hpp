#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "robsub/bounds.hpp"
#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/oracle.hpp"
#include "robsub/types.hpp"

namespace robsub {

struct IterationRecord {
  ElementSet iterate;
  double objective = 0.0;
};

// Result of a robust minimization run. worst_value == max(per_function);
// apriori_bound is the declared multiplicative guarantee for the method
// (NaN when no guarantee applies); continuous_value is set only by the
// relaxation solver.
struct RobustSolution {
  ElementSet set;
  std::vector<double> per_function;
  double worst_value = 0.0;
  std::vector<IterationRecord> trace;
  std::string method;
  double apriori_bound = std::numeric_limits<double>::quiet_NaN();
  double continuous_value = std::numeric_limits<double>::quiet_NaN();
};

// How the inner min-max over modular upper bounds is solved. ModMax folds
// the bounds into per-element maxima, Avg into per-element means (both lose
// at most a factor equal to the list length); Both solves with each folding
// and keeps the candidate whose true affine maximum is smaller; Exhaustive
// enumerates the feasible region (budget-gated).
enum class InnerStrategy { ModMax, Avg, Both, Exhaustive };

struct MinSolveOptions {
  InnerStrategy strategy = InnerStrategy::Both;
  int max_iterations = 50;
  double relative_tolerance = 1e-6;
  OracleBudget oracle;
};

// Minimize max_i (offset_i + w_i(X)) over the family. Offsets shift each
// affine bound but not the folded costs, so candidate sets are always
// compared under the true affine maximum.
ElementSet inner_minmax_modular(std::span<const ModularBound> bounds, const ConstraintFamily& c,
                                InnerStrategy strategy, const OracleBudget& budget = {});

// Iterated majorize-and-solve: anchor modular upper bounds at the incumbent
// (growing from the empty set first, shrinking afterwards), solve the inner
// min-max, and accept only strict decreases of the true objective.
RobustSolution mmin_robust_submin(std::span<const SetFunctionHandle> fs,
                                  const ConstraintFamily& c, const MinSolveOptions& opts = {});

// Same loop applied to the single average function; reported values are
// still the true per-function maxima.
RobustSolution aa_submin(std::span<const SetFunctionHandle> fs, const ConstraintFamily& c,
                         const MinSolveOptions& opts = {});

struct CrOptions {
  int max_iterations = 4000;
  // Step scale c for the diminishing schedule c / sqrt(t); <= 0 means use
  // the objective value at the starting point.
  double step_scale = 0.0;
  int max_projection_sweeps = 200;
  double projection_tolerance = 1e-7;
};

// Continuous relaxation: projected subgradient descent of the pointwise
// maximum of the convex extensions over the covering polytope, then round by
// scanning prefixes of the coordinate order and pruning the first prefix
// whose up-closure test passes.
RobustSolution cr_submin(std::span<const SetFunctionHandle> fs, const CoveringFamily& polytope,
                         const ConstraintFamily& c, const CrOptions& opts = {});

// Modular certificate for one objective: sqrt(weights(X)) <= f(X) for all X,
// with equality everywhere iff exact. Validated by sampling at construction.
struct EACertificate {
  SetFunctionHandle fn;
  std::vector<double> weights;
  double curvature = 0.0;
  bool exact = false;
};

EACertificate make_ea_certificate(const SetFunctionHandle& fn, std::vector<double> weights,
                                  bool exact, std::uint64_t validation_seed = 0x5eed);

// Square-root trick: minimize the maximum of the certified modular values
// (an inner min-max), then report the true objectives. When every
// certificate is exact the method inherits a sqrt(alpha) guarantee from an
// alpha-approximate inner solve.
RobustSolution ea_submin(std::span<const EACertificate> certs, const ConstraintFamily& c,
                         const MinSolveOptions& opts = {});

}  // namespace robsub
