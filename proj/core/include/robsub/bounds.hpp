#pragma once

#include <span>
#include <vector>

#include "robsub/functions.hpp"
#include "robsub/types.hpp"

namespace robsub {

// A permutation of the ground set; prefix i is the set of the first i
// entries. Used to anchor modular lower bounds.
struct Chain {
  std::vector<ElementId> order;

  // Permutation whose first entries are `prefix` (ascending ids), followed
  // by the remaining elements in ascending order.
  static Chain starting_with(const ElementSet& prefix);
  void validate(int universe_size) const;
};

enum class BoundDirection { Lower, Upper };
enum class SupergradientVariant { Grow, Shrink };

// Affine set function b(S) = offset + sum_{j in S} weights[j], anchored at a
// set where it coincides with the bounded function.
struct ModularBound {
  double offset = 0.0;
  std::vector<double> weights;
  ElementSet anchor;
  BoundDirection direction = BoundDirection::Lower;

  int universe_size() const { return static_cast<int>(weights.size()); }
  double value(const ElementSet& s) const;
  double weight_sum(const ElementSet& s) const;
};

// Modular lower bound from the chain: weight of order[i] is the gain of
// order[i] on top of the first i elements. Tight on every prefix of the
// chain and pointwise below f everywhere.
ModularBound subgradient_chain(const SetFunctionHandle& f, const Chain& sigma);

// Modular upper bounds anchored at X, tight at X and pointwise above f:
//   Grow:   f(X) - sum_{j in X \ Y} f(j | X \ j)  + sum_{j in Y \ X} f({j})
//   Shrink: f(X) - sum_{j in X \ Y} f(j | V \ j)  + sum_{j in Y \ X} f(j | X)
ModularBound supergradient(const SetFunctionHandle& f, const ElementSet& anchor,
                           SupergradientVariant variant);

struct LovaszResult {
  double value = 0.0;
  std::vector<double> subgradient;
};

// Convex extension of f at x in [0,1]^n: sorts coordinates descending
// (ties by ascending id), accumulates chain gains in that order, and
// returns <gains, x> together with the gains as a subgradient.
LovaszResult lovasz(const SetFunctionHandle& f, std::span<const double> x);

}  // namespace robsub
