#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "robsub/functions.hpp"
#include "robsub/robust_max.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/types.hpp"

namespace robsub {

// Solution of a cover-constrained minimization (objective = max_i f_i,
// targets c_i on the g side) or a budget-constrained maximization
// (objective = min_i g_i, budgets b_i on the f side). sigma is the budget
// blowup max_i f_i(X)/b_i floored at 1; rho is the met fraction of the
// covering targets min_i g_i(X)/c_i truncated at 1. Sides without declared
// budgets/targets report the neutral 1.
struct BicriteriaSolution {
  ElementSet set;
  double objective = 0.0;
  double sigma = 1.0;
  double rho = 1.0;
  int inner_calls = 0;
  std::string method;
  std::vector<double> f_values;
  std::vector<double> g_values;
};

enum class ScMethod { MMin, AA, EA };

struct ScOptions {
  int max_iterations = 50;
  double relative_tolerance = 1e-6;
  SaturateOptions saturate;
};

// Maximize min_i g_i subject to f_i(X) <= b_i for all i.
//
// MMin: anchor a modular upper bound on each f_i (empty-set growth first,
// then shrink at the incumbent), solve the resulting max-min under multiple
// knapsacks with budgets inflated by K(n, kappa_wc) so the true optimum
// stays feasible, and accept iterates that improve min_i g_i while keeping
// the measured budget blowup within K(n, kappa_wc) * ln(l / eps).
// AA: fold the normalized constraints into the single average
// (1/l) sum_i f_i/b_i <= 1 and majorize that one function, giving a single
// knapsack per iteration.
// EA: replace each constraint by the certified modular form
// weights_i(X) <= b_i^2 and solve one multi-knapsack max-min.
BicriteriaSolution robust_scsk(std::span<const SetFunctionHandle> fs,
                               std::span<const SetFunctionHandle> gs,
                               std::span<const double> budgets, ScMethod method, double eps,
                               std::span<const EACertificate> certs = {},
                               const ScOptions& opts = {});

// Minimize max_i f_i subject to g_i(X) >= c_i for all i.
//
// AA: rewrite the covers as one submodular cover
// sum_i min(g_i(X), c_i) >= sum_i c_i, then repeatedly greedy-cover it with
// costs taken from a modular upper bound of the average objective,
// re-anchoring at the previous cover while the average keeps decreasing.
// MMin / EA: obtained by bisecting a uniform budget level through
// dual_convert over the corresponding budget-constrained solver.
BicriteriaSolution robust_scsc(std::span<const SetFunctionHandle> fs,
                               std::span<const SetFunctionHandle> gs,
                               std::span<const double> targets, ScMethod method, double eps,
                               std::span<const EACertificate> certs = {},
                               const ScOptions& opts = {});

enum class DualDirection {
  ScskToScsc,  // bisect a budget level, each probe solved as a maximization
  ScscToScsk   // bisect a target level, each probe solved as a minimization
};

// One bisection probe: solve the inner problem at the given scalar level and
// report the result in the OUTER problem's terms (sigma/rho against the
// outer budgets/targets). sigma/rho here declare the inner solver's own
// bicriteria quality; probes are accepted when they reach those levels.
struct InnerBicriteria {
  std::function<BicriteriaSolution(double)> solve;
  double sigma = 1.0;
  double rho = 1.0;
};

struct DualConvertResult {
  BicriteriaSolution solution;
  int calls = 0;
  int call_bound = 0;  // ceil(log2((hi/lo)/eps)), the declared ceiling
  double level = 0.0;  // scalar level of the returned solution
  bool used_fallback = false;
};

// Bisect the scalar level in [lo, hi] until the interval shrinks below
// eps * lo, accepting probes that meet the inner solver's declared side
// (coverage for ScskToScsc, budget for ScscToScsk) and keeping the best
// accepted solution (cheapest objective, respectively largest). A collapsed
// range costs a single call; if no probe is accepted the provided fallback
// is returned without further calls.
DualConvertResult dual_convert(DualDirection direction, const InnerBicriteria& inner, double lo,
                               double hi, double eps, const BicriteriaSolution& fallback);

// sum_{t=1..d} 1/t, the set-cover factor appearing in cover-cost bounds.
double harmonic(int d);

}  // namespace robsub
