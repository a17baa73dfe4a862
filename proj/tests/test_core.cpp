#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "robsub/functions.hpp"
#include "robsub/rng.hpp"
#include "robsub/types.hpp"
#include "test_common.hpp"

using namespace robsub;
using namespace robsub::testutil;

TEST_CASE("element set basics") {
  ElementSet s = ElementSet::of(5, {1, 3});
  CHECK(s.size() == 2);
  CHECK(s.contains(1));
  CHECK(!s.contains(0));
  CHECK(s.ids() == std::vector<ElementId>{1, 3});
  CHECK(s.complement().ids() == std::vector<ElementId>{0, 2, 4});
  CHECK(ElementSet::full(3).size() == 3);
  CHECK(ElementSet::from_mask(3, 0b101).ids() == std::vector<ElementId>{0, 2});
  CHECK(s.with(0).size() == 3);
  CHECK(s.without(3).size() == 1);
  CHECK(s.is_subset_of(ElementSet::full(5)));
  CHECK_THROWS_AS(s.contains(5), OutOfRangeError);
  CHECK_THROWS_AS(ElementSet(3).add(-1), OutOfRangeError);
  CHECK(ElementSet::lex_less(ElementSet::of(3, {0, 2}), ElementSet::of(3, {1})));
}

TEST_CASE("rng reproducibility") {
  Rng a(42), b(42);
  for (int i = 0; i < 32; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(42);
  for (int i = 0; i < 100; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng d(7);
  std::vector<int> p = d.permutation(6);
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("modular evaluation and gains") {
  SetFunctionHandle f = modular({2, 3, 5});
  CHECK(f.eval(ElementSet(3)) == 0.0);
  CHECK(f.eval(ElementSet::of(3, {0, 2})) == doctest::Approx(7.0));
  CHECK(f.value_of_full() == doctest::Approx(10.0));
  CHECK(f.gain(1, ElementSet::of(3, {0})) == doctest::Approx(3.0));
  CHECK(f.singleton(2) == doctest::Approx(5.0));
  CHECK_THROWS_AS(f.eval(ElementSet::of(4, {3})), Error);
}

TEST_CASE("clustered sqrt evaluation") {
  SetFunctionHandle f = build(
      FunctionSpec::clustered_sqrt({1, 1, 4}, {{0, 1}, {2}}), 3);
  CHECK(f.eval(ElementSet::full(3)) == doctest::Approx(std::sqrt(2.0) + 2.0));
  CHECK(f.gain(2, ElementSet::of(3, {0, 1})) == doctest::Approx(2.0));
  SetFunctionHandle root = sqrt_card(3);
  CHECK(root.gain(1, ElementSet::of(3, {0})) == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("facility location on identity similarity counts elements") {
  std::vector<std::vector<double>> identity = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  SetFunctionHandle f = build(FunctionSpec::facility_location(identity), 3);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    ElementSet s = ElementSet::from_mask(3, mask);
    CHECK(f.eval(s) == doctest::Approx(static_cast<double>(s.size())));
  }
}

TEST_CASE("feature based concave sums") {
  SetFunctionHandle f =
      build(FunctionSpec::feature_based({{1.0}, {4.0}}, ConcaveKind::Sqrt), 2);
  CHECK(f.eval(ElementSet::of(2, {0})) == doctest::Approx(1.0));
  CHECK(f.eval(ElementSet::of(2, {1})) == doctest::Approx(2.0));
  CHECK(f.eval(ElementSet::full(2)) == doctest::Approx(std::sqrt(5.0)));
  SetFunctionHandle g =
      build(FunctionSpec::feature_based({{1.0}, {4.0}}, ConcaveKind::Log1p), 2);
  CHECK(g.eval(ElementSet::full(2)) == doctest::Approx(std::log1p(5.0)));
}

TEST_CASE("coverage evaluation") {
  SetFunctionHandle f = build(FunctionSpec::coverage({{0, 1}, {0}}, {1.0, 2.0}), 2);
  CHECK(f.eval(ElementSet::of(2, {0})) == doctest::Approx(3.0));
  CHECK(f.eval(ElementSet::of(2, {1})) == doctest::Approx(1.0));
  CHECK(f.eval(ElementSet::full(2)) == doctest::Approx(3.0));
}

TEST_CASE("truncation caps the inner function") {
  SetFunctionHandle f =
      build(FunctionSpec::truncation(FunctionSpec::modular({2, 3, 5}), 4.0), 3);
  CHECK(f.eval(ElementSet::full(3)) == doctest::Approx(4.0));
  CHECK(f.eval(ElementSet::of(3, {0})) == doctest::Approx(2.0));
}

TEST_CASE("weighted sum combines terms") {
  std::vector<FunctionSpec> terms;
  terms.push_back(FunctionSpec::modular({1, 0}));
  terms.push_back(FunctionSpec::modular({0, 1}));
  SetFunctionHandle f = build(FunctionSpec::weighted_sum(std::move(terms), {2.0, 0.5}), 2);
  CHECK(f.eval(ElementSet::of(2, {0})) == doctest::Approx(2.0));
  CHECK(f.eval(ElementSet::full(2)) == doctest::Approx(2.5));
}

TEST_CASE("curvature of shipped shapes") {
  CHECK(total_curvature(modular({2, 3, 5})) == doctest::Approx(0.0));
  CHECK(total_curvature(sqrt_card(2)) == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(total_curvature(any_indicator(2)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(total_curvature(modular({0, 0})), DegenerateFunctionError);
}

TEST_CASE("curvature interpolation factor") {
  for (double v : {1.0, 2.5, 7.0}) {
    CHECK(kappa_factor(v, 1.0) == doctest::Approx(v));
    CHECK(kappa_factor(v, 0.0) == doctest::Approx(1.0));
  }
  CHECK(kappa_factor(4.0, 0.5) == doctest::Approx(1.6));
  double prev = 0.0;
  for (double kappa = 0.0; kappa <= 1.0; kappa += 0.1) {
    const double k = kappa_factor(3.0, kappa);
    CHECK(k >= prev - 1e-12);
    prev = k;
  }
  CHECK_THROWS_AS(kappa_factor(0.5, 0.5), DomainError);
}

TEST_CASE("aggregate avg and max") {
  std::vector<SetFunctionHandle> fs = {modular({1, 0}), modular({0, 1})};
  ElementSet both = ElementSet::full(2);
  CHECK(aggregate(fs, AggregateMode::Avg, both) == doctest::Approx(1.0));
  CHECK(aggregate(fs, AggregateMode::Max, both) == doctest::Approx(1.0));
  std::vector<SetFunctionHandle> one = {modular({2, 1})};
  ElementSet s = ElementSet::of(2, {0});
  CHECK(aggregate(one, AggregateMode::Avg, s) == doctest::Approx(aggregate(one, AggregateMode::Max, s)));
  SetFunctionHandle favg = make_average(fs);
  CHECK(favg.eval(both) == doctest::Approx(1.0));
  CHECK_THROWS_AS(aggregate({}, AggregateMode::Avg, both), ValidationError);
}

TEST_CASE("average/max sandwich on random sets") {
  Rng rng(11);
  for (int l : {2, 5, 10}) {
    std::vector<SetFunctionHandle> fs;
    for (int i = 0; i < l; ++i) fs.push_back(build(random_spec(rng, 8, i), 8));
    for (int t = 0; t < 200; ++t) {
      ElementSet s = rng.random_subset(8);
      const double avg = aggregate(fs, AggregateMode::Avg, s);
      const double mx = aggregate(fs, AggregateMode::Max, s);
      CHECK(avg <= mx + 1e-12);
      CHECK(mx <= l * avg + 1e-12);
    }
  }
}

TEST_CASE("build validation rejects malformed specs") {
  CHECK_THROWS_AS(build(FunctionSpec::modular({1, -2}), 2), ValidationError);
  CHECK_THROWS_AS(build(FunctionSpec::modular({1, 2, 3}), 2), ValidationError);
  CHECK_THROWS_AS(build(FunctionSpec::clustered_sqrt({1, 1}, {{0, 5}}), 2), ValidationError);
}

TEST_CASE("handle caches match direct evaluation") {
  Rng rng(3);
  for (int family = 0; family < kFamilyCount; ++family) {
    SetFunctionHandle f = build(random_spec(rng, 6, family), 6);
    ElementSet full = ElementSet::full(6);
    for (int j = 0; j < 6; ++j) {
      CHECK(f.singleton(j) == doctest::Approx(f.eval(ElementSet::of(6, {j}))));
      CHECK(f.top_gain(j) == doctest::Approx(f.eval(full) - f.eval(full.without(j))));
    }
  }
}

TEST_CASE("every family is normalized monotone submodular") {
  Rng rng(2024);
  for (int family = 0; family < kFamilyCount; ++family) {
    const int n = 7;
    SetFunctionHandle f = build(random_spec(rng, n, family), n);
    CHECK(f.eval(ElementSet(n)) == doctest::Approx(0.0));
    for (int t = 0; t < 200; ++t) {
      ElementSet small = rng.random_subset(n, 0.3);
      ElementSet large = small;
      for (int j = 0; j < n; ++j)
        if (rng.bernoulli(0.3)) large.add(j);
      int j = rng.uniform_int(0, n - 1);
      if (large.contains(j)) continue;
      CHECK(f.gain(j, small) >= f.gain(j, large) - 1e-9);
      CHECK(f.gain(j, large) >= -1e-12);
    }
  }
}
