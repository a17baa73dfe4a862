#include "robsub/robust_min.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "robsub/rng.hpp"

namespace robsub {
namespace {

double true_affine_max(std::span<const ModularBound> bounds, const ElementSet& s) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& b : bounds) best = std::max(best, b.value(s));
  return best;
}

std::vector<double> clamp_nonnegative(const std::vector<double>& w) {
  std::vector<double> out(w);
  for (double& x : out) x = std::max(x, 0.0);
  return out;
}

void check_same_universe(std::span<const SetFunctionHandle> fs, int n, const char* what) {
  for (const auto& f : fs)
    if (f.universe_size() != n)
      throw ValidationError(std::string(what) + ": function universe mismatch");
}

double worst_case_curvature(std::span<const SetFunctionHandle> fs) {
  double kappa = 0.0;
  for (const auto& f : fs) kappa = std::max(kappa, safe_curvature(f));
  return kappa;
}

// Shared best-response loop for mmin_robust_submin and aa_submin: majorize
// `surrogates` at the incumbent, solve the inner min-max, accept strict
// decreases of the true objective max over `report`.
RobustSolution iterate_upper_bounds(std::span<const SetFunctionHandle> surrogates,
                                    std::span<const SetFunctionHandle> report,
                                    const ConstraintFamily& c, const MinSolveOptions& opts,
                                    const std::string& method) {
  const int n = c.universe_size();
  RobustSolution sol;
  sol.method = method;

  ElementSet anchor(n);
  bool have_incumbent = false;
  double incumbent_value = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    const auto variant = it == 0 ? SupergradientVariant::Grow : SupergradientVariant::Shrink;
    std::vector<ModularBound> bounds;
    bounds.reserve(surrogates.size());
    for (const auto& f : surrogates) bounds.push_back(supergradient(f, anchor, variant));
    const ElementSet candidate = inner_minmax_modular(bounds, c, opts.strategy, opts.oracle);
    const double value = max_value(report, candidate);
    if (have_incumbent) {
      const double scale = std::max(1.0, std::abs(incumbent_value));
      if (value >= incumbent_value - opts.relative_tolerance * scale) break;
    }
    sol.set = candidate;
    sol.trace.push_back({candidate, value});
    incumbent_value = value;
    have_incumbent = true;
    anchor = candidate;
  }
  if (!have_incumbent) throw InfeasibleError(method + ": no feasible iterate produced");
  sol.per_function = eval_all(report, sol.set);
  sol.worst_value = incumbent_value;
  return sol;
}

}  // namespace

ElementSet inner_minmax_modular(std::span<const ModularBound> bounds, const ConstraintFamily& c,
                                InnerStrategy strategy, const OracleBudget& budget) {
  if (bounds.empty()) throw ValidationError("inner_minmax_modular: no bounds");
  const int n = c.universe_size();
  for (const auto& b : bounds)
    if (b.universe_size() != n)
      throw ValidationError("inner_minmax_modular: bound universe mismatch");

  if (strategy == InnerStrategy::Exhaustive) {
    const auto feasible = enumerate_feasible(c, budget);
    if (feasible.empty()) throw InfeasibleError("inner_minmax_modular: empty feasible region");
    const ElementSet* best = nullptr;
    double best_value = 0.0;
    for (const auto& s : feasible) {
      const double v = true_affine_max(bounds, s);
      if (best == nullptr || v < best_value ||
          (v == best_value && ElementSet::lex_less(s, *best))) {
        best = &s;
        best_value = v;
      }
    }
    return *best;
  }

  std::vector<ElementSet> candidates;
  if (strategy == InnerStrategy::ModMax || strategy == InnerStrategy::Both) {
    std::vector<double> folded(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
      double m = 0.0;
      for (const auto& b : bounds) m = std::max(m, b.weights[static_cast<std::size_t>(j)]);
      folded[static_cast<std::size_t>(j)] = m;
    }
    candidates.push_back(c.min_modular(folded));
  }
  if (strategy == InnerStrategy::Avg || strategy == InnerStrategy::Both) {
    std::vector<double> folded(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
      double total = 0.0;
      for (const auto& b : bounds)
        total += std::max(b.weights[static_cast<std::size_t>(j)], 0.0);
      folded[static_cast<std::size_t>(j)] = total / static_cast<double>(bounds.size());
    }
    candidates.push_back(c.min_modular(folded));
  }

  const ElementSet* best = nullptr;
  double best_value = 0.0;
  for (const auto& s : candidates) {
    const double v = true_affine_max(bounds, s);
    if (best == nullptr || v < best_value || (v == best_value && ElementSet::lex_less(s, *best))) {
      best = &s;
      best_value = v;
    }
  }
  return *best;
}

RobustSolution mmin_robust_submin(std::span<const SetFunctionHandle> fs,
                                  const ConstraintFamily& c, const MinSolveOptions& opts) {
  if (fs.empty()) throw ValidationError("mmin_robust_submin: empty function list");
  check_same_universe(fs, c.universe_size(), "mmin_robust_submin");
  RobustSolution sol = iterate_upper_bounds(fs, fs, c, opts, "mmin");
  const double l = static_cast<double>(fs.size());
  const double alpha =
      (opts.strategy == InnerStrategy::Exhaustive ? 1.0 : l) * c.oracle_alpha();
  const double size = std::max(1.0, static_cast<double>(sol.set.size()));
  sol.apriori_bound = alpha * kappa_factor(size, worst_case_curvature(fs));
  return sol;
}

RobustSolution aa_submin(std::span<const SetFunctionHandle> fs, const ConstraintFamily& c,
                         const MinSolveOptions& opts) {
  if (fs.empty()) throw ValidationError("aa_submin: empty function list");
  check_same_universe(fs, c.universe_size(), "aa_submin");
  const SetFunctionHandle favg = make_average(fs);
  const SetFunctionHandle surrogate[] = {favg};
  RobustSolution sol = iterate_upper_bounds(surrogate, fs, c, opts, "aa");
  const double l = static_cast<double>(fs.size());
  const double size = std::max(1.0, static_cast<double>(sol.set.size()));
  sol.apriori_bound =
      l * kappa_factor(size, safe_curvature(favg)) * c.oracle_alpha();
  return sol;
}

namespace {

// Clamp to the box, then repeatedly project onto violated covering
// halfspaces (equal shift across the constraint's support) and re-clamp.
void project_to_polytope(std::vector<double>& x, const CoveringFamily& polytope,
                         const CrOptions& opts) {
  auto clamp_box = [&x]() {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  };
  clamp_box();
  for (int sweep = 0; sweep < opts.max_projection_sweeps; ++sweep) {
    double worst = 0.0;
    for (const auto& cc : polytope.constraints()) {
      double mass = 0.0;
      for (ElementId j : cc.elements) mass += x[static_cast<std::size_t>(j)];
      const double deficit = static_cast<double>(cc.bound) - mass;
      if (deficit > 0.0) {
        const double shift = deficit / static_cast<double>(cc.elements.size());
        for (ElementId j : cc.elements) x[static_cast<std::size_t>(j)] += shift;
        clamp_box();
        worst = std::max(worst, deficit);
      }
    }
    if (worst <= opts.projection_tolerance) return;
  }
  if (!polytope.satisfied(x, 10 * opts.projection_tolerance))
    throw RoundingError("cr: cyclic projection did not reach the polytope");
}

}  // namespace

RobustSolution cr_submin(std::span<const SetFunctionHandle> fs, const CoveringFamily& polytope,
                         const ConstraintFamily& c, const CrOptions& opts) {
  if (fs.empty()) throw ValidationError("cr_submin: empty function list");
  const int n = c.universe_size();
  check_same_universe(fs, n, "cr_submin");
  if (polytope.universe_size() != n)
    throw ValidationError("cr_submin: polytope universe mismatch");

  // Objective and one subgradient of the pointwise maximum at x.
  auto objective_at = [&](const std::vector<double>& x, std::vector<double>* grad) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& f : fs) {
      LovaszResult r = lovasz(f, x);
      if (r.value > best) {
        best = r.value;
        if (grad != nullptr) *grad = std::move(r.subgradient);
      }
    }
    return best;
  };

  std::vector<double> x(static_cast<std::size_t>(n), 1.0);
  project_to_polytope(x, polytope, opts);
  std::vector<double> grad;
  double value = objective_at(x, &grad);
  const double step_scale = opts.step_scale > 0.0 ? opts.step_scale : std::max(value, 1e-12);
  std::vector<double> best_x = x;
  double best_value = value;
  for (int t = 1; t <= opts.max_iterations; ++t) {
    double norm = 0.0;
    for (double gj : grad) norm += gj * gj;
    norm = std::sqrt(norm);
    if (norm <= 1e-15) break;  // flat: x is already minimal
    const double step = step_scale / std::sqrt(static_cast<double>(t));
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] -= step * grad[static_cast<std::size_t>(j)] / norm;
    project_to_polytope(x, polytope, opts);
    value = objective_at(x, &grad);
    if (value < best_value) {
      best_value = value;
      best_x = x;
    }
  }

  // Rounding: scan prefixes of the coordinate order (descending value, ties
  // by ascending id), take the first whose up-closure test passes, prune it
  // to a feasible subset cheap under the folded singleton costs.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return best_x[static_cast<std::size_t>(a)] > best_x[static_cast<std::size_t>(b)];
  });
  ElementSet prefix(n);
  ElementSet rounded;
  bool found = false;
  for (int j : order) {
    prefix.add(j);
    if (c.contains_feasible_subset(prefix)) {
      std::vector<double> cost(static_cast<std::size_t>(n), 0.0);
      for (int e = 0; e < n; ++e) {
        double m = 0.0;
        for (const auto& f : fs) m = std::max(m, f.singleton(e));
        cost[static_cast<std::size_t>(e)] = m;
      }
      rounded = c.min_modular(cost, &prefix);
      found = true;
      break;
    }
  }
  if (!found) throw RoundingError("cr: no prefix of the relaxed point is feasible");

  RobustSolution sol;
  sol.method = "cr";
  sol.set = rounded;
  sol.per_function = eval_all(fs, rounded);
  sol.worst_value = *std::max_element(sol.per_function.begin(), sol.per_function.end());
  sol.continuous_value = best_value;
  sol.apriori_bound = polytope.rounding_factor();
  sol.trace.push_back({rounded, sol.worst_value});
  return sol;
}

EACertificate make_ea_certificate(const SetFunctionHandle& fn, std::vector<double> weights,
                                  bool exact, std::uint64_t validation_seed) {
  if (!fn.valid()) throw ValidationError("certificate: empty function handle");
  const int n = fn.universe_size();
  if (static_cast<int>(weights.size()) != n)
    throw ValidationError("certificate: weight count != universe size");
  for (double w : weights)
    if (!(w >= 0.0)) throw ValidationError("certificate: weights must be nonnegative");

  // Sampled soundness check: sqrt(w(X)) <= f(X), with equality when exact.
  constexpr int kSamples = 200;
  constexpr double kTol = 1e-9;
  Rng rng(validation_seed);
  auto check_set = [&](const ElementSet& s) {
    double mass = 0.0;
    for (ElementId j : s.ids()) mass += weights[static_cast<std::size_t>(j)];
    const double certified = std::sqrt(mass);
    const double actual = fn.eval(s);
    if (certified > actual + kTol)
      throw ValidationError("certificate: sqrt(w(X)) exceeds f(X) on a sampled set");
    if (exact && std::abs(certified - actual) > kTol)
      throw ValidationError("certificate: declared exact but sqrt(w(X)) != f(X) on a sample");
  };
  check_set(ElementSet(n));
  check_set(ElementSet::full(n));
  for (int i = 0; i < kSamples; ++i) check_set(rng.random_subset(n));

  EACertificate cert;
  cert.fn = fn;
  cert.weights = std::move(weights);
  cert.curvature = safe_curvature(fn);
  cert.exact = exact;
  return cert;
}

RobustSolution ea_submin(std::span<const EACertificate> certs, const ConstraintFamily& c,
                         const MinSolveOptions& opts) {
  if (certs.empty()) throw ValidationError("ea_submin: no certificates");
  const int n = c.universe_size();
  std::vector<ModularBound> bounds;
  std::vector<SetFunctionHandle> fs;
  bounds.reserve(certs.size());
  fs.reserve(certs.size());
  for (const auto& cert : certs) {
    if (cert.fn.universe_size() != n) throw ValidationError("ea_submin: universe mismatch");
    ModularBound b;
    b.offset = 0.0;
    b.weights = clamp_nonnegative(cert.weights);
    b.anchor = ElementSet(n);
    b.direction = BoundDirection::Upper;
    bounds.push_back(std::move(b));
    fs.push_back(cert.fn);
  }

  const ElementSet x = inner_minmax_modular(bounds, c, opts.strategy, opts.oracle);
  RobustSolution sol;
  sol.method = "ea";
  sol.set = x;
  sol.per_function = eval_all(fs, x);
  sol.worst_value = *std::max_element(sol.per_function.begin(), sol.per_function.end());
  sol.trace.push_back({x, sol.worst_value});
  bool all_exact = true;
  for (const auto& cert : certs) all_exact = all_exact && cert.exact;
  if (all_exact) {
    const double l = static_cast<double>(certs.size());
    const double alpha =
        (opts.strategy == InnerStrategy::Exhaustive ? 1.0 : l) * c.oracle_alpha();
    sol.apriori_bound = std::sqrt(alpha);
  }
  return sol;
}

}  // namespace robsub
