#include "robsub/scsc_scsk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "robsub/bounds.hpp"

namespace robsub {

namespace {

constexpr double kFeasTol = 1e-9;

void check_lists(std::span<const SetFunctionHandle> fs, std::span<const SetFunctionHandle> gs) {
  if (fs.empty() || gs.empty()) throw ValidationError("robust solver: empty function list");
  const int n = fs[0].universe_size();
  for (const auto& f : fs)
    if (f.universe_size() != n) throw ValidationError("robust solver: universe mismatch");
  for (const auto& g : gs)
    if (g.universe_size() != n) throw ValidationError("robust solver: universe mismatch");
}

double worst_case_curvature(std::span<const SetFunctionHandle> fs) {
  double kappa = 0.0;
  for (const auto& f : fs) kappa = std::max(kappa, safe_curvature(f));
  return kappa;
}

void fill_values(BicriteriaSolution& sol, std::span<const SetFunctionHandle> fs,
                 std::span<const SetFunctionHandle> gs) {
  sol.f_values = eval_all(fs, sol.set);
  sol.g_values = eval_all(gs, sol.set);
}

double budget_blowup(std::span<const double> f_values, std::span<const double> budgets) {
  double sigma = 1.0;
  for (std::size_t i = 0; i < f_values.size(); ++i)
    sigma = std::max(sigma, f_values[i] / budgets[i]);
  return sigma;
}

double coverage_fraction(std::span<const double> g_values, std::span<const double> targets) {
  double rho = 1.0;
  for (std::size_t i = 0; i < g_values.size(); ++i) {
    if (targets[i] <= 0.0) continue;
    rho = std::min(rho, g_values[i] / targets[i]);
  }
  return std::min(rho, 1.0);
}

struct ScskCandidate {
  ElementSet set;
  double value = 0.0;      // min_i g_i
  double violation = 1.0;  // max_i f_i / b_i
};

// One majorize-and-solve pass for budget-constrained maximization: modular
// upper bounds on the constraint side anchored at the incumbent, inner
// max-min under the surrogate knapsacks, acceptance only when the true
// worst value improves and the measured blowup stays under the ceiling.
BicriteriaSolution scsk_majorize(std::span<const SetFunctionHandle> fs,
                                 std::span<const SetFunctionHandle> gs,
                                 std::span<const double> budgets,
                                 std::span<const double> bound_caps, double eps,
                                 double violation_cap, const ScOptions& opts,
                                 const char* method_tag) {
  const int n = fs[0].universe_size();
  BicriteriaSolution best;
  best.set = ElementSet::of(n, {});
  best.method = method_tag;

  std::optional<ScskCandidate> incumbent;
  ElementSet anchor = ElementSet::of(n, {});
  for (int it = 0; it < opts.max_iterations; ++it) {
    const SupergradientVariant variant =
        it == 0 ? SupergradientVariant::Grow : SupergradientVariant::Shrink;
    std::vector<Knapsack> surrogate;
    surrogate.reserve(fs.size());
    bool degenerate = false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      ModularBound ub = supergradient(fs[i], anchor, variant);
      const double room = bound_caps[i] - ub.offset;
      if (room <= 0.0) {
        degenerate = true;
        break;
      }
      surrogate.push_back({std::move(ub.weights), room});
    }
    if (degenerate) break;

    std::optional<ScskCandidate> round_best;
    for (KnapsackReduction red : {KnapsackReduction::ModMax, KnapsackReduction::Avg}) {
      if (red == KnapsackReduction::Avg && surrogate.size() == 1) break;
      MultiKnapsackResult inner =
          multiknapsack_robust_max(gs, surrogate, eps, red, opts.saturate);
      ++best.inner_calls;
      ScskCandidate cand;
      cand.set = inner.set;
      cand.value = min_value(gs, inner.set);
      cand.violation = budget_blowup(eval_all(fs, inner.set), budgets);
      if (cand.violation > violation_cap + kFeasTol) continue;
      if (!round_best || cand.value > round_best->value) round_best = cand;
    }
    if (!round_best) break;

    const bool improves =
        !incumbent ||
        round_best->value > incumbent->value * (1.0 + opts.relative_tolerance) ||
        (incumbent->value == 0.0 && round_best->value > 0.0);
    if (!improves) break;
    incumbent = round_best;
    anchor = incumbent->set;
  }

  if (!incumbent) {
    // Even the first surrogate produced nothing inside the ceiling; report
    // the empty set, which is always budget-feasible for normalized f.
    incumbent = ScskCandidate{ElementSet::of(n, {}), min_value(gs, ElementSet::of(n, {})), 1.0};
  }
  best.set = incumbent->set;
  best.objective = incumbent->value;
  fill_values(best, fs, gs);
  best.sigma = budget_blowup(best.f_values, budgets);
  best.rho = 1.0;
  return best;
}

}  // namespace

double harmonic(int d) {
  double h = 0.0;
  for (int t = 1; t <= d; ++t) h += 1.0 / t;
  return h;
}

BicriteriaSolution robust_scsk(std::span<const SetFunctionHandle> fs,
                               std::span<const SetFunctionHandle> gs,
                               std::span<const double> budgets, ScMethod method, double eps,
                               std::span<const EACertificate> certs, const ScOptions& opts) {
  check_lists(fs, gs);
  if (budgets.size() != fs.size())
    throw ValidationError("robust_scsk: one budget per objective function required");
  for (double b : budgets)
    if (!(b > 0.0)) throw ValidationError("robust_scsk: budgets must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw OutOfRangeError("robust_scsk: eps must lie in (0,1)");
  const int n = fs[0].universe_size();
  const int l = static_cast<int>(gs.size());

  if (method == ScMethod::MMin) {
    const double kappa = worst_case_curvature(fs);
    const double inflate = kappa_factor(n, kappa);
    std::vector<double> caps(budgets.begin(), budgets.end());
    for (double& c : caps) c *= inflate;
    const double ceiling = inflate * std::log(l / eps);
    return scsk_majorize(fs, gs, budgets, caps, eps, ceiling, opts, "mmin");
  }

  if (method == ScMethod::AA) {
    // Single averaged constraint (1/l_f) sum_i f_i / b_i <= 1.
    std::vector<SetFunctionHandle> scaled;
    scaled.reserve(fs.size());
    std::vector<double> coeffs(fs.size(), 1.0 / static_cast<double>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i)
      scaled.push_back(make_scaled(fs[i], 1.0 / budgets[i]));
    SetFunctionHandle favg = make_weighted_sum(scaled, coeffs);
    const double kappa = safe_curvature(favg);
    const double inflate = kappa_factor(n, kappa);
    std::vector<SetFunctionHandle> one{favg};
    std::vector<double> one_budget{1.0};
    std::vector<double> one_cap{inflate};
    // The cap is measured on the folded ratio; the outer blowup picks up an
    // extra factor of the list length on top of this.
    const double ceiling = inflate * std::log(l / eps);
    BicriteriaSolution sol =
        scsk_majorize(one, gs, one_budget, one_cap, eps, ceiling, opts, "aa");
    // Report against the real objectives, not the folded surrogate.
    fill_values(sol, fs, gs);
    sol.sigma = budget_blowup(sol.f_values, budgets);
    sol.objective = min_value(gs, sol.set);
    return sol;
  }

  // EA: certified modular forms turn every budget into a plain knapsack
  // weights_i(X) <= b_i^2.
  if (certs.size() != fs.size())
    throw ValidationError("robust_scsk: one certificate per objective required for ea");
  std::vector<Knapsack> ks;
  ks.reserve(certs.size());
  for (std::size_t i = 0; i < certs.size(); ++i)
    ks.push_back({certs[i].weights, budgets[i] * budgets[i]});
  MultiKnapsackResult inner = multiknapsack_robust_max(gs, ks, eps, KnapsackReduction::Both,
                                                       opts.saturate);
  BicriteriaSolution sol;
  sol.method = "ea";
  sol.set = inner.set;
  sol.inner_calls = 1;
  fill_values(sol, fs, gs);
  sol.objective = min_value(gs, sol.set);
  sol.sigma = budget_blowup(sol.f_values, budgets);
  sol.rho = 1.0;
  return sol;
}

BicriteriaSolution robust_scsc(std::span<const SetFunctionHandle> fs,
                               std::span<const SetFunctionHandle> gs,
                               std::span<const double> targets, ScMethod method, double eps,
                               std::span<const EACertificate> certs, const ScOptions& opts) {
  check_lists(fs, gs);
  if (targets.size() != gs.size())
    throw ValidationError("robust_scsc: one target per covering function required");
  if (!(eps > 0.0 && eps < 1.0)) throw OutOfRangeError("robust_scsc: eps must lie in (0,1)");
  const int n = fs[0].universe_size();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] >= 0.0)) throw ValidationError("robust_scsc: negative target");
    if (targets[i] > gs[i].value_of_full() + kFeasTol)
      throw InfeasibleError("robust_scsc: target exceeds the value of the full set");
  }

  double target_sum = 0.0;
  for (double c : targets) target_sum += c;
  if (target_sum <= 0.0) {
    BicriteriaSolution sol;
    sol.method = method == ScMethod::AA ? "aa" : method == ScMethod::MMin ? "mmin" : "ea";
    sol.set = ElementSet::of(n, {});
    fill_values(sol, fs, gs);
    sol.objective = max_value(fs, sol.set);
    sol.rho = 1.0;
    return sol;
  }

  if (method == ScMethod::AA) {
    // Saturate trick: all covers met  <=>  sum_i min(g_i, c_i) reaches
    // sum_i c_i. Greedy-cover that single function with supergradient costs
    // of the average objective, re-anchoring while the average decreases.
    std::vector<SetFunctionHandle> truncated;
    truncated.reserve(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i)
      truncated.push_back(make_truncated(gs[i], targets[i]));
    std::vector<double> unit(gs.size(), 1.0);
    SetFunctionHandle cover_fn = make_weighted_sum(truncated, unit);
    SetFunctionHandle favg = make_average(fs);

    BicriteriaSolution sol;
    sol.method = "aa";
    std::optional<ElementSet> incumbent;
    double incumbent_avg = std::numeric_limits<double>::infinity();
    ElementSet anchor = ElementSet::of(n, {});
    for (int it = 0; it < opts.max_iterations; ++it) {
      const SupergradientVariant variant =
          it == 0 ? SupergradientVariant::Grow : SupergradientVariant::Shrink;
      ModularBound ub = supergradient(favg, anchor, variant);
      ElementSet cover = greedy_cover(cover_fn, target_sum, ub.weights);
      ++sol.inner_calls;
      const double avg = favg.eval(cover);
      if (incumbent && avg >= incumbent_avg * (1.0 - opts.relative_tolerance)) break;
      incumbent = cover;
      incumbent_avg = avg;
      anchor = cover;
    }
    sol.set = *incumbent;
    fill_values(sol, fs, gs);
    sol.objective = max_value(fs, sol.set);
    sol.rho = coverage_fraction(sol.g_values, targets);
    return sol;
  }

  // MMin / EA reach the cover problem through the budget-side solver: bisect
  // a uniform budget level, maximize the scaled covers under it, and keep
  // the cheapest probe that reaches full coverage.
  std::vector<SetFunctionHandle> scaled;
  scaled.reserve(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (targets[i] <= 0.0) continue;  // vacuous cover
    scaled.push_back(make_scaled(gs[i], 1.0 / targets[i]));
  }

  double hi = 0.0;
  for (const auto& f : fs) hi = std::max(hi, f.value_of_full());
  double lo = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double worst = 0.0;
    for (const auto& f : fs) worst = std::max(worst, f.singleton(j));
    lo = std::min(lo, worst);
  }
  if (!(hi > 0.0)) throw DegenerateFunctionError("robust_scsc: objectives vanish on the full set");
  lo = std::max(lo, hi * 1e-12);

  const char* tag = method == ScMethod::MMin ? "mmin-dual" : "ea-dual";

  BicriteriaSolution fallback;
  fallback.method = tag;
  fallback.set = ElementSet::full(n);
  fill_values(fallback, fs, gs);
  fallback.objective = max_value(fs, fallback.set);
  fallback.rho = coverage_fraction(fallback.g_values, targets);

  InnerBicriteria probe_solver;
  probe_solver.sigma = 1.0;
  probe_solver.rho = 1.0 - eps;
  probe_solver.solve = [&](double level) {
    std::vector<double> budgets(fs.size(), level);
    BicriteriaSolution probe = robust_scsk(fs, scaled, budgets, method, eps, certs, opts);
    probe.method = tag;
    fill_values(probe, fs, gs);
    probe.objective = max_value(fs, probe.set);
    probe.rho = coverage_fraction(probe.g_values, targets);
    probe.sigma = 1.0;
    return probe;
  };

  DualConvertResult converted =
      dual_convert(DualDirection::ScskToScsc, probe_solver, lo, hi, eps, fallback);
  BicriteriaSolution sol = converted.solution;
  sol.method = tag;
  sol.inner_calls = converted.calls;
  return sol;
}

DualConvertResult dual_convert(DualDirection direction, const InnerBicriteria& inner, double lo,
                               double hi, double eps, const BicriteriaSolution& fallback) {
  if (!inner.solve) throw ValidationError("dual_convert: inner solver missing");
  if (!(lo > 0.0 && hi > 0.0)) throw ValidationError("dual_convert: range must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw OutOfRangeError("dual_convert: eps must lie in (0,1)");
  if (hi < lo) std::swap(hi, lo);

  DualConvertResult result;
  result.call_bound =
      std::max(1, static_cast<int>(std::ceil(std::log2((hi / lo) / eps))));

  const bool keep_max = direction == DualDirection::ScscToScsk;
  auto accepted = [&](const BicriteriaSolution& sol) {
    return keep_max ? sol.sigma <= inner.sigma + kFeasTol : sol.rho >= inner.rho - kFeasTol;
  };

  std::optional<BicriteriaSolution> best;
  double best_level = 0.0;

  const double lo0 = lo;
  if (hi - lo <= eps * lo0) {
    // Collapsed range: a single probe decides.
    BicriteriaSolution sol = inner.solve(hi);
    ++result.calls;
    if (accepted(sol)) {
      best = sol;
      best_level = hi;
    }
  } else {
    while (hi - lo > eps * lo0 && result.calls < result.call_bound) {
      const double mid = 0.5 * (lo + hi);
      BicriteriaSolution sol = inner.solve(mid);
      ++result.calls;
      if (accepted(sol)) {
        const bool better =
            !best || (keep_max ? sol.objective > best->objective
                               : sol.objective < best->objective);
        if (better) {
          best = sol;
          best_level = mid;
        }
        if (keep_max)
          lo = mid;  // budget met; push the target level higher
        else
          hi = mid;  // coverage met; try a cheaper budget
      } else {
        if (keep_max)
          hi = mid;
        else
          lo = mid;
      }
    }
  }

  if (best) {
    result.solution = *best;
    result.level = best_level;
  } else {
    result.solution = fallback;
    result.level = keep_max ? lo0 : hi;
    result.used_fallback = true;
  }
  return result;
}

}  // namespace robsub
