#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "robsub/bounds.hpp"
#include "robsub/functions.hpp"
#include "robsub/rng.hpp"
#include "test_common.hpp"

using namespace robsub;
using namespace robsub::testutil;

TEST_CASE("chain helper produces valid permutations") {
  Chain sigma = Chain::starting_with(ElementSet::of(5, {3, 1}));
  CHECK(sigma.order == std::vector<ElementId>{1, 3, 0, 2, 4});
  sigma.validate(5);
  CHECK_THROWS_AS(sigma.validate(4), ValidationError);
}

TEST_CASE("chain subgradient of a modular function returns its weights") {
  SetFunctionHandle f = modular({2, 3, 5});
  Chain sigma;
  sigma.order = {2, 0, 1};
  ModularBound lower = subgradient_chain(f, sigma);
  CHECK(lower.direction == BoundDirection::Lower);
  CHECK(lower.weights[0] == doctest::Approx(2.0));
  CHECK(lower.weights[1] == doctest::Approx(3.0));
  CHECK(lower.weights[2] == doctest::Approx(5.0));
  CHECK(lower.offset == doctest::Approx(0.0));
}

TEST_CASE("chain subgradient of sqrt cardinality") {
  SetFunctionHandle f = sqrt_card(3);
  Chain sigma;
  sigma.order = {0, 1, 2};
  ModularBound lower = subgradient_chain(f, sigma);
  CHECK(lower.weights[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lower.weights[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(lower.weights[2] == doctest::Approx(std::sqrt(3.0) - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("chain prefixes are tight") {
  Rng rng(5);
  for (int family = 0; family < kFamilyCount; ++family) {
    const int n = 6;
    SetFunctionHandle f = build(random_spec(rng, n, family), n);
    Chain sigma;
    std::vector<int> perm = rng.permutation(n);
    sigma.order.assign(perm.begin(), perm.end());
    ModularBound lower = subgradient_chain(f, sigma);
    ElementSet prefix(n);
    for (int i = 0; i < n; ++i) {
      prefix.add(sigma.order[static_cast<std::size_t>(i)]);
      CHECK(lower.value(prefix) == doctest::Approx(f.eval(prefix)).epsilon(1e-12));
    }
    for (int t = 0; t < 50; ++t) {
      ElementSet s = rng.random_subset(n);
      CHECK(lower.value(s) <= f.eval(s) + 1e-9);
    }
  }
}

TEST_CASE("grow supergradient at the empty set is the singleton sum") {
  Rng rng(6);
  SetFunctionHandle f = build(random_spec(rng, 6, 1), 6);
  ModularBound upper = supergradient(f, ElementSet(6), SupergradientVariant::Grow);
  for (int t = 0; t < 50; ++t) {
    ElementSet y = rng.random_subset(6);
    double singleton_sum = 0.0;
    for (ElementId j : y.ids()) singleton_sum += f.singleton(j);
    CHECK(upper.value(y) == doctest::Approx(singleton_sum).epsilon(1e-12));
  }
}

TEST_CASE("grow supergradient worked value") {
  SetFunctionHandle f = sqrt_card(3);
  ModularBound upper = supergradient(f, ElementSet::of(3, {0}), SupergradientVariant::Grow);
  const double at = upper.value(ElementSet::of(3, {0, 1}));
  CHECK(at == doctest::Approx(2.0));
  CHECK(at >= std::sqrt(2.0));
}

TEST_CASE("supergradients are tight at the anchor and dominate elsewhere") {
  Rng rng(7);
  for (int family = 0; family < kFamilyCount; ++family) {
    const int n = 6;
    SetFunctionHandle f = build(random_spec(rng, n, family), n);
    for (int t = 0; t < 20; ++t) {
      ElementSet anchor = rng.random_subset(n);
      for (auto variant : {SupergradientVariant::Grow, SupergradientVariant::Shrink}) {
        ModularBound upper = supergradient(f, anchor, variant);
        CHECK(upper.value(anchor) == doctest::Approx(f.eval(anchor)).epsilon(1e-12));
        for (int probe = 0; probe < 10; ++probe) {
          ElementSet y = rng.random_subset(n);
          CHECK(upper.value(y) >= f.eval(y) - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("grow bound at the empty set obeys the curvature inflation") {
  Rng rng(8);
  for (int family = 0; family < kFamilyCount; ++family) {
    const int n = 6;
    SetFunctionHandle f = build(random_spec(rng, n, family), n);
    const double kappa = safe_curvature(f);
    ModularBound upper = supergradient(f, ElementSet(n), SupergradientVariant::Grow);
    for (int t = 0; t < 50; ++t) {
      ElementSet y = rng.random_nonempty_subset(n);
      const double fy = f.eval(y);
      const double by = upper.value(y);
      CHECK(by >= fy - 1e-9);
      if (fy > 1e-12)
        CHECK(by <= kappa_factor(static_cast<double>(y.size()), kappa) * fy + 1e-9);
    }
  }
}

TEST_CASE("extension matches the function at vertices") {
  Rng rng(9);
  for (int family = 0; family < kFamilyCount; ++family) {
    const int n = 6;
    SetFunctionHandle f = build(random_spec(rng, n, family), n);
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      ElementSet s = ElementSet::from_mask(n, mask);
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      for (ElementId j : s.ids()) x[static_cast<std::size_t>(j)] = 1.0;
      CHECK(lovasz(f, x).value == doctest::Approx(f.eval(s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("extension worked value at a fractional point") {
  SetFunctionHandle f = sqrt_card(3);
  LovaszResult r = lovasz(f, std::vector<double>{0.5, 0.25, 0.0});
  CHECK(r.value == doctest::Approx(0.5 + 0.25 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
  CHECK(lovasz(f, std::vector<double>{0.0, 0.0, 0.0}).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(lovasz(f, std::vector<double>{1.5, 0.0, 0.0}), DomainError);
}

TEST_CASE("extension is positively homogeneous and convex") {
  Rng rng(10);
  SetFunctionHandle f = build(random_spec(rng, 5, 3), 5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = rng.uniform_vector(5, 0.0, 1.0);
    const double theta = rng.uniform01();
    std::vector<double> tx = x;
    for (auto& v : tx) v *= theta;
    CHECK(lovasz(f, tx).value == doctest::Approx(theta * lovasz(f, x).value).epsilon(1e-9));

    std::vector<double> y = rng.uniform_vector(5, 0.0, 1.0);
    const double lambda = rng.uniform01();
    std::vector<double> mix(5);
    for (int j = 0; j < 5; ++j)
      mix[static_cast<std::size_t>(j)] = lambda * x[static_cast<std::size_t>(j)] +
                                         (1 - lambda) * y[static_cast<std::size_t>(j)];
    CHECK(lovasz(f, mix).value <=
          lambda * lovasz(f, x).value + (1 - lambda) * lovasz(f, y).value + 1e-9);
  }
}

TEST_CASE("returned subgradient supports the extension") {
  Rng rng(12);
  SetFunctionHandle f = build(random_spec(rng, 5, 4), 5);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x = rng.uniform_vector(5, 0.0, 1.0);
    LovaszResult at = lovasz(f, x);
    std::vector<double> y = rng.uniform_vector(5, 0.0, 1.0);
    double linear = at.value;
    for (int j = 0; j < 5; ++j)
      linear += at.subgradient[static_cast<std::size_t>(j)] *
                (y[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)]);
    CHECK(lovasz(f, y).value >= linear - 1e-9);
  }
}

TEST_CASE("tied coordinates give a consistent value") {
  SetFunctionHandle f = sqrt_card(4);
  const double v = lovasz(f, std::vector<double>{0.5, 0.5, 0.5, 0.5}).value;
  CHECK(v == doctest::Approx(0.5 * 2.0).epsilon(1e-12));
  SetFunctionHandle g = build(
      FunctionSpec::clustered_sqrt({1, 2, 1, 2}, {{0, 1}, {2, 3}}), 4);
  const double mixed = lovasz(g, std::vector<double>{0.3, 0.7, 0.7, 0.3}).value;
  const double swapped = lovasz(g, std::vector<double>{0.7, 0.3, 0.3, 0.7}).value;
  CHECK(mixed == doctest::Approx(swapped).epsilon(1e-12));
}
