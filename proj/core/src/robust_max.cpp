#include "robsub/robust_max.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace robsub {

namespace {

constexpr double kCoverTol = 1e-9;

struct HeapEntry {
  double ratio;
  int id;
  int version;  // |S| when the gain was computed; stale when it lags
};

struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.ratio != b.ratio) return a.ratio < b.ratio;
    return a.id > b.id;
  }
};

double gain_ratio(double gain, double cost) {
  if (cost <= 0.0) return gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return gain / cost;
}

// One saturation sweep shared by the cardinality and knapsack paths: bisect
// the level c, covering the mean of the c-truncated functions to c, keeping
// the largest level whose cover is accepted by `fits`.
template <typename Fits>
SaturateResult saturate_core(std::span<const SetFunctionHandle> gs, std::span<const double> cost,
                             double eps, const SaturateOptions& opts, const Fits& fits) {
  const int l = static_cast<int>(gs.size());
  if (l == 0) throw ValidationError("saturate: no functions");
  if (!(eps > 0.0 && eps < 1.0)) throw OutOfRangeError("saturate: eps must lie in (0,1)");
  const int n = gs[0].universe_size();
  double hi0 = std::numeric_limits<double>::infinity();
  for (const auto& g : gs) hi0 = std::min(hi0, g.value_of_full());
  if (hi0 <= 0.0) throw DegenerateFunctionError("saturate: every level is zero at the full set");

  const double tol = eps * hi0 / l;
  auto attempt = [&](double c) -> ElementSet {
    std::vector<SetFunctionHandle> truncated;
    truncated.reserve(gs.size());
    for (const auto& g : gs) truncated.push_back(make_truncated(g, c));
    SetFunctionHandle mean = make_average(truncated);
    return greedy_cover(mean, c, cost);
  };

  SaturateResult result;
  result.set = ElementSet::of(n, {});
  result.achieved_target = 0.0;

  double lo = 0.0;
  double hi = hi0;
  // The top level is reachable at V; probe it first so bisection can end early.
  {
    ElementSet top = attempt(hi0);
    ++result.bisections;
    if (fits(top)) {
      result.set = top;
      result.achieved_target = hi0;
      lo = hi0;
      hi = hi0;
    }
  }
  while (hi - lo > tol && result.bisections < opts.max_bisections) {
    const double mid = 0.5 * (lo + hi);
    ElementSet cover = attempt(mid);
    ++result.bisections;
    if (fits(cover)) {
      lo = mid;
      result.set = cover;
      result.achieved_target = mid;
    } else {
      hi = mid;
    }
  }

  result.per_function.reserve(gs.size());
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& g : gs) {
    const double v = g.eval(result.set);
    result.per_function.push_back(v);
    worst = std::min(worst, v);
  }
  result.worst_value = worst;
  return result;
}

}  // namespace

ElementSet greedy_cover(const SetFunctionHandle& h, double target, std::span<const double> cost) {
  const int n = h.universe_size();
  if (static_cast<int>(cost.size()) != n)
    throw ValidationError("greedy_cover: cost size mismatch");
  for (double c : cost)
    if (!(c >= 0.0)) throw ValidationError("greedy_cover: negative cost");
  if (h.value_of_full() < target - kCoverTol)
    throw CoverageError("greedy_cover: target exceeds the value of the full set");

  ElementSet s = ElementSet::of(n, {});
  double value = h.eval(s);
  if (value >= target - kCoverTol) return s;

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
  for (int j = 0; j < n; ++j)
    heap.push({gain_ratio(h.singleton(j), cost[j]), j, 0});

  while (value < target - kCoverTol) {
    if (heap.empty()) throw CoverageError("greedy_cover: no progress toward target");
    HeapEntry top = heap.top();
    heap.pop();
    if (s.contains(top.id)) continue;
    if (top.version != s.size()) {
      top.ratio = gain_ratio(h.gain(top.id, s), cost[top.id]);
      top.version = s.size();
      heap.push(top);
      continue;
    }
    const double gain = h.gain(top.id, s);
    if (gain <= kCoverTol) {
      // The best ratio can sit on a near-zero gain (tiny cost); fall back to
      // the largest absolute gain before concluding the cover stalled.
      value = h.eval(s);
      if (value >= target - kCoverTol) return s;
      int pick = -1;
      double best = kCoverTol;
      for (int j = 0; j < n; ++j) {
        if (s.contains(j)) continue;
        const double gj = h.gain(j, s);
        if (gj > best) {
          best = gj;
          pick = j;
        }
      }
      if (pick < 0) throw CoverageError("greedy_cover: gains vanished before reaching target");
      s.add(pick);
      value += best;
      continue;
    }
    s.add(top.id);
    value += gain;
  }
  return s;
}

SaturateResult saturate_robust_max(std::span<const SetFunctionHandle> gs, int k, double eps,
                                   const SaturateOptions& opts) {
  if (k < 1) throw OutOfRangeError("saturate_robust_max: k must be at least 1");
  const int l = static_cast<int>(gs.size());
  if (l == 0) throw ValidationError("saturate_robust_max: no functions");
  const int n = gs[0].universe_size();
  std::vector<double> unit(n, 1.0);
  const int relaxed = k * static_cast<int>(std::ceil(std::log(l / eps)));
  auto fits = [&](const ElementSet& s) { return s.size() <= relaxed; };
  SaturateResult result = saturate_core(gs, unit, eps, opts, fits);
  result.relaxed_budget = relaxed;
  return result;
}

MultiKnapsackResult multiknapsack_robust_max(std::span<const SetFunctionHandle> gs,
                                             std::span<const Knapsack> knapsacks, double eps,
                                             KnapsackReduction reduction,
                                             const SaturateOptions& opts) {
  const int l = static_cast<int>(gs.size());
  if (l == 0) throw ValidationError("multiknapsack_robust_max: no functions");
  if (knapsacks.empty()) throw ValidationError("multiknapsack_robust_max: no knapsacks");
  const int n = gs[0].universe_size();
  const int num_knapsacks = static_cast<int>(knapsacks.size());
  for (const auto& ks : knapsacks) {
    if (static_cast<int>(ks.weights.size()) != n)
      throw ValidationError("multiknapsack_robust_max: weight size mismatch");
    if (!(ks.budget > 0.0)) throw ValidationError("multiknapsack_robust_max: zero budget");
    for (double w : ks.weights)
      if (!(w >= 0.0)) throw ValidationError("multiknapsack_robust_max: negative weight");
  }

  // Normalized per-element ratios w_ij / b_i, folded per reduction.
  auto folded = [&](KnapsackReduction mode) {
    std::vector<double> w(n, 0.0);
    for (int j = 0; j < n; ++j) {
      double mx = 0.0;
      double sum = 0.0;
      for (const auto& ks : knapsacks) {
        const double r = ks.weights[j] / ks.budget;
        mx = std::max(mx, r);
        sum += r;
      }
      w[j] = mode == KnapsackReduction::ModMax ? mx : sum / num_knapsacks;
    }
    return w;
  };

  const double threshold = std::log(l / eps);
  const double allowed = num_knapsacks * threshold;

  auto run = [&](KnapsackReduction mode) {
    std::vector<double> w = folded(mode);
    auto fits = [&](const ElementSet& s) {
      double total = 0.0;
      for (ElementId j : s.ids()) total += w[j];
      return total <= threshold + kCoverTol;
    };
    SaturateResult sat = saturate_core(gs, w, eps, opts, fits);
    MultiKnapsackResult out;
    out.set = sat.set;
    out.worst_value = sat.worst_value;
    out.achieved_target = sat.achieved_target;
    out.bisections = sat.bisections;
    out.reduction_used = mode;
    out.violation.allowed = allowed;
    out.violation.ratios.reserve(knapsacks.size());
    double mx = 0.0;
    for (const auto& ks : knapsacks) {
      double total = 0.0;
      for (ElementId j : sat.set.ids()) total += ks.weights[j];
      const double r = total / ks.budget;
      out.violation.ratios.push_back(r);
      mx = std::max(mx, r);
    }
    out.violation.max_ratio = mx;
    return out;
  };

  if (reduction != KnapsackReduction::Both) return run(reduction);

  MultiKnapsackResult a = run(KnapsackReduction::ModMax);
  MultiKnapsackResult b = run(KnapsackReduction::Avg);
  const bool a_ok = a.violation.max_ratio <= allowed + kCoverTol;
  const bool b_ok = b.violation.max_ratio <= allowed + kCoverTol;
  if (a_ok != b_ok) return a_ok ? a : b;
  if (a.worst_value != b.worst_value) return a.worst_value > b.worst_value ? a : b;
  return a.violation.max_ratio <= b.violation.max_ratio ? a : b;
}

}  // namespace robsub
