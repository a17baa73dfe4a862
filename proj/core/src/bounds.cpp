#include "robsub/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace robsub {

Chain Chain::starting_with(const ElementSet& prefix) {
  Chain c;
  c.order = prefix.ids();
  for (int j = 0; j < prefix.universe_size(); ++j)
    if (!prefix.contains(j)) c.order.push_back(j);
  return c;
}

void Chain::validate(int universe_size) const {
  if (static_cast<int>(order.size()) != universe_size)
    throw ValidationError("chain must list every element exactly once");
  std::vector<char> seen(static_cast<std::size_t>(universe_size), 0);
  for (ElementId j : order) {
    if (j < 0 || j >= universe_size) throw OutOfRangeError("chain: element id out of range");
    if (seen[static_cast<std::size_t>(j)]) throw ValidationError("chain: duplicate element");
    seen[static_cast<std::size_t>(j)] = 1;
  }
}

double ModularBound::value(const ElementSet& s) const {
  return offset + weight_sum(s);
}

double ModularBound::weight_sum(const ElementSet& s) const {
  if (s.universe_size() != universe_size())
    throw ValidationError("modular bound: set universe mismatch");
  double total = 0.0;
  for (ElementId j : s.ids()) total += weights[static_cast<std::size_t>(j)];
  return total;
}

ModularBound subgradient_chain(const SetFunctionHandle& f, const Chain& sigma) {
  const int n = f.universe_size();
  sigma.validate(n);
  ModularBound b;
  b.offset = 0.0;
  b.weights.assign(static_cast<std::size_t>(n), 0.0);
  b.anchor = ElementSet(n);
  b.direction = BoundDirection::Lower;
  ElementSet prefix(n);
  double prev = 0.0;
  for (ElementId j : sigma.order) {
    prefix.add(j);
    const double cur = f.eval(prefix);
    b.weights[static_cast<std::size_t>(j)] = cur - prev;
    prev = cur;
  }
  return b;
}

ModularBound supergradient(const SetFunctionHandle& f, const ElementSet& anchor,
                           SupergradientVariant variant) {
  const int n = f.universe_size();
  if (anchor.universe_size() != n)
    throw ValidationError("supergradient: anchor universe mismatch");
  ModularBound b;
  b.anchor = anchor;
  b.direction = BoundDirection::Upper;
  b.weights.assign(static_cast<std::size_t>(n), 0.0);
  const double fx = f.eval(anchor);
  double anchored_weight = 0.0;
  for (int j = 0; j < n; ++j) {
    double w;
    if (anchor.contains(j)) {
      // Weight of a kept member: its gain on the rest of X (Grow) or on the
      // rest of the whole universe (Shrink).
      w = variant == SupergradientVariant::Grow ? fx - f.eval(anchor.without(j))
                                                : f.top_gain(j);
      anchored_weight += w;
    } else {
      w = variant == SupergradientVariant::Grow ? f.singleton(j)
                                                : f.gain(j, anchor);
    }
    b.weights[static_cast<std::size_t>(j)] = w;
  }
  b.offset = fx - anchored_weight;
  return b;
}

LovaszResult lovasz(const SetFunctionHandle& f, std::span<const double> x) {
  const int n = f.universe_size();
  if (static_cast<int>(x.size()) != n)
    throw ValidationError("lovasz: coordinate count != universe size");
  constexpr double kBoxTol = 1e-12;
  for (double v : x)
    if (!(v >= -kBoxTol && v <= 1.0 + kBoxTol)) throw DomainError("lovasz: x outside [0,1]^n");

  // Stable sort: descending value, ascending id on ties.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return x[static_cast<std::size_t>(a)] > x[static_cast<std::size_t>(b)];
  });

  LovaszResult out;
  out.subgradient.assign(static_cast<std::size_t>(n), 0.0);
  ElementSet prefix(n);
  double prev = 0.0;
  for (int j : order) {
    prefix.add(j);
    const double cur = f.eval(prefix);
    const double gain = cur - prev;
    out.subgradient[static_cast<std::size_t>(j)] = gain;
    const double xi = std::clamp(x[static_cast<std::size_t>(j)], 0.0, 1.0);
    out.value += gain * xi;
    prev = cur;
  }
  return out;
}

}  // namespace robsub
