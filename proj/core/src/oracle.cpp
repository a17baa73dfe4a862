#include "robsub/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

namespace robsub {
namespace {

constexpr double kFeasTol = 1e-9;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}
  void check(std::int64_t step) const {
    if ((step & 0xFFF) == 0 && std::chrono::steady_clock::now() > end_)
      throw OracleBudgetError("oracle: timeout exceeded");
  }

 private:
  std::chrono::steady_clock::time_point end_;
};

std::int64_t power_set_size_checked(int n, const OracleBudget& budget) {
  if (n < 0) throw ValidationError("oracle: negative universe");
  if (n >= 62 || (std::int64_t{1} << n) > budget.max_sets)
    throw OracleBudgetError("oracle: 2^" + std::to_string(n) +
                            " subsets exceed the enumeration budget");
  return std::int64_t{1} << n;
}

// Visits all subsets in Gray-code order, flipping one element per step, so
// the visitor can maintain incremental state. visit(set, flipped) is called
// after each flip; flipped == -1 for the initial empty set.
template <typename Visitor>
void walk_subsets(int n, std::int64_t total, const Deadline& deadline, Visitor&& visit) {
  ElementSet current(n);
  visit(current, -1);
  for (std::int64_t i = 1; i < total; ++i) {
    deadline.check(i);
    const int bit = static_cast<int>(std::countr_zero(static_cast<std::uint64_t>(i)));
    current.toggle(bit);
    visit(current, bit);
  }
}

// Keeps the running values of each function in sync with single-element
// flips. Modular functions update in O(1); everything else re-evaluates.
class IncrementalValues {
 public:
  IncrementalValues(std::span<const SetFunctionHandle> fs, int n) : fs_(fs) {
    values_.assign(fs.size(), 0.0);
    modular_.reserve(fs.size());
    for (const auto& f : fs) {
      if (f.universe_size() != n)
        throw ValidationError("oracle: function universe does not match constraint universe");
      modular_.push_back(f.fn().modular_weights());
    }
  }

  void update(const ElementSet& s, int flipped) {
    for (std::size_t i = 0; i < fs_.size(); ++i) {
      if (flipped >= 0 && modular_[i] != nullptr) {
        const double w = (*modular_[i])[static_cast<std::size_t>(flipped)];
        values_[i] += s.contains(flipped) ? w : -w;
      } else {
        values_[i] = fs_[i].eval(s);
      }
    }
  }

  const std::vector<double>& values() const { return values_; }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }
  double min() const { return *std::min_element(values_.begin(), values_.end()); }

 private:
  std::span<const SetFunctionHandle> fs_;
  std::vector<const std::vector<double>*> modular_;
  std::vector<double> values_;
};

}  // namespace

std::vector<ElementSet> enumerate_feasible(const ConstraintFamily& c, const OracleBudget& budget) {
  const int n = c.universe_size();
  const std::int64_t total = power_set_size_checked(n, budget);
  const Deadline deadline(budget.timeout_seconds);
  std::vector<ElementSet> out;
  for (std::int64_t mask = 0; mask < total; ++mask) {
    deadline.check(mask);
    ElementSet s = ElementSet::from_mask(n, static_cast<std::uint64_t>(mask));
    if (c.is_feasible(s)) out.push_back(std::move(s));
  }
  return out;
}

OracleSolution brute_force_min_max(std::span<const SetFunctionHandle> fs,
                                   const ConstraintFamily& c, const OracleBudget& budget) {
  if (fs.empty()) throw ValidationError("oracle: empty function list");
  const int n = c.universe_size();
  const std::int64_t total = power_set_size_checked(n, budget);
  const Deadline deadline(budget.timeout_seconds);
  IncrementalValues vals(fs, n);
  OracleSolution best;
  best.value = std::numeric_limits<double>::infinity();
  bool found = false;
  walk_subsets(n, total, deadline, [&](const ElementSet& s, int flipped) {
    vals.update(s, flipped);
    if (!c.is_feasible(s)) return;
    ++best.feasible_count;
    const double v = vals.max();
    if (!found || v < best.value ||
        (v == best.value && ElementSet::lex_less(s, best.set))) {
      best.set = s;
      best.value = v;
      found = true;
    }
  });
  if (!found) throw InfeasibleError("oracle: no feasible set");
  return best;
}

OracleSolution brute_force_max_min(std::span<const SetFunctionHandle> gs,
                                   const ConstraintFamily& c, const OracleBudget& budget) {
  if (gs.empty()) throw ValidationError("oracle: empty function list");
  const int n = c.universe_size();
  const std::int64_t total = power_set_size_checked(n, budget);
  const Deadline deadline(budget.timeout_seconds);
  IncrementalValues vals(gs, n);
  OracleSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  bool found = false;
  walk_subsets(n, total, deadline, [&](const ElementSet& s, int flipped) {
    vals.update(s, flipped);
    if (!c.is_feasible(s)) return;
    ++best.feasible_count;
    const double v = vals.min();
    if (!found || v > best.value ||
        (v == best.value && ElementSet::lex_less(s, best.set))) {
      best.set = s;
      best.value = v;
      found = true;
    }
  });
  if (!found) throw InfeasibleError("oracle: no feasible set");
  return best;
}

OracleSolution brute_force_min_max_covering(std::span<const SetFunctionHandle> fs,
                                            std::span<const SetFunctionHandle> gs,
                                            std::span<const double> targets,
                                            const OracleBudget& budget) {
  if (fs.empty() || gs.empty()) throw ValidationError("oracle: empty function list");
  if (gs.size() != targets.size())
    throw ValidationError("oracle: target count != function count");
  const int n = fs.front().universe_size();
  const std::int64_t total = power_set_size_checked(n, budget);
  const Deadline deadline(budget.timeout_seconds);
  IncrementalValues fvals(fs, n), gvals(gs, n);
  OracleSolution best;
  best.value = std::numeric_limits<double>::infinity();
  bool found = false;
  walk_subsets(n, total, deadline, [&](const ElementSet& s, int flipped) {
    fvals.update(s, flipped);
    gvals.update(s, flipped);
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (gvals.values()[i] < targets[i] - kFeasTol) return;
    ++best.feasible_count;
    const double v = fvals.max();
    if (!found || v < best.value ||
        (v == best.value && ElementSet::lex_less(s, best.set))) {
      best.set = s;
      best.value = v;
      found = true;
    }
  });
  if (!found) throw InfeasibleError("oracle: no set meets every covering target");
  return best;
}

OracleSolution brute_force_max_min_budgeted(std::span<const SetFunctionHandle> fs,
                                            std::span<const SetFunctionHandle> gs,
                                            std::span<const double> budgets,
                                            const OracleBudget& budget) {
  if (fs.empty() || gs.empty()) throw ValidationError("oracle: empty function list");
  if (fs.size() != budgets.size())
    throw ValidationError("oracle: budget count != function count");
  const int n = fs.front().universe_size();
  const std::int64_t total = power_set_size_checked(n, budget);
  const Deadline deadline(budget.timeout_seconds);
  IncrementalValues fvals(fs, n), gvals(gs, n);
  OracleSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  bool found = false;
  walk_subsets(n, total, deadline, [&](const ElementSet& s, int flipped) {
    fvals.update(s, flipped);
    gvals.update(s, flipped);
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fvals.values()[i] > budgets[i] + kFeasTol) return;
    ++best.feasible_count;
    const double v = gvals.min();
    if (!found || v > best.value ||
        (v == best.value && ElementSet::lex_less(s, best.set))) {
      best.set = s;
      best.value = v;
      found = true;
    }
  });
  if (!found) throw InfeasibleError("oracle: no set fits every budget");
  return best;
}

}  // namespace robsub
