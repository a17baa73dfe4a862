#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "robsub/oracle.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/rng.hpp"
#include "test_common.hpp"

using namespace robsub;
using namespace robsub::testutil;

namespace {

ModularBound upper_bound_of(std::vector<double> w) {
  ModularBound b;
  b.weights = std::move(w);
  b.anchor = ElementSet(static_cast<int>(b.weights.size()));
  b.direction = BoundDirection::Upper;
  return b;
}

}  // namespace

TEST_CASE("inner min-max over two crossed bounds") {
  std::vector<ModularBound> bounds = {upper_bound_of({3, 1}), upper_bound_of({1, 3})};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(2, 1);
  for (auto strategy :
       {InnerStrategy::ModMax, InnerStrategy::Avg, InnerStrategy::Both, InnerStrategy::Exhaustive}) {
    ElementSet s = inner_minmax_modular(bounds, c, strategy);
    CHECK(c.is_feasible(s));
    double worst = 0.0;
    for (const auto& b : bounds) worst = std::max(worst, b.value(s));
    CHECK(worst == doctest::Approx(3.0));
  }
}

TEST_CASE("a single bound reduces to the exact linear oracle") {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const int n = 6;
    std::vector<double> w = rng.uniform_vector(n, 0.1, 2.0);
    std::vector<ModularBound> bounds = {upper_bound_of(w)};
    ConstraintFamily c = ConstraintFamily::cardinality_lower(n, 3);
    ElementSet got = inner_minmax_modular(bounds, c, InnerStrategy::Both);
    CHECK(bounds[0].value(got) == doctest::Approx(bounds[0].value(c.min_modular(w))));
  }
}

TEST_CASE("offsets shift candidate comparison") {
  ModularBound a = upper_bound_of({1, 1});
  ModularBound b = upper_bound_of({2, 0.5});
  b.offset = 2.0;
  std::vector<ModularBound> bounds = {a, b};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(2, 1);
  ElementSet s = inner_minmax_modular(bounds, c, InnerStrategy::Exhaustive);
  CHECK(s.ids() == std::vector<ElementId>{1});
}

TEST_CASE("majorize-minimize on one modular objective is exact in one step") {
  SetFunctionHandle f = modular({4, 1, 3});
  std::vector<SetFunctionHandle> fs = {f};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(3, 2);
  RobustSolution sol = mmin_robust_submin(fs, c);
  CHECK(sol.method == "mmin");
  CHECK(sol.worst_value == doctest::Approx(4.0));
  CHECK(sol.set.ids() == std::vector<ElementId>{1, 2});
  CHECK(c.is_feasible(sol.set));
}

TEST_CASE("majorize-minimize stays within the declared factor") {
  Rng rng(12);
  const int n = 10;
  std::vector<SetFunctionHandle> fs = {build(random_spec(rng, n, 1), n),
                                       build(random_spec(rng, n, 1), n)};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(n, 3);
  RobustSolution sol = mmin_robust_submin(fs, c);
  CHECK(c.is_feasible(sol.set));
  CHECK(sol.worst_value == doctest::Approx(max_value_over(fs, sol.set)));

  OracleSolution opt = brute_force_min_max(fs, c);
  double kappa = 0.0;
  for (const auto& f : fs) kappa = std::max(kappa, safe_curvature(f));
  const double bound =
      2.0 * kappa_factor(static_cast<double>(std::max(1, opt.set.size())), kappa);
  CHECK(sol.worst_value <= bound * opt.value + 1e-9);

  for (std::size_t i = 1; i < sol.trace.size(); ++i)
    CHECK(sol.trace[i].objective <= sol.trace[i - 1].objective + 1e-9);
}

TEST_CASE("repeat runs produce identical traces") {
  Rng rng(13);
  const int n = 8;
  std::vector<SetFunctionHandle> fs = {build(random_spec(rng, n, 1), n),
                                       build(random_spec(rng, n, 4), n)};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(n, 2);
  RobustSolution first = mmin_robust_submin(fs, c);
  RobustSolution second = mmin_robust_submin(fs, c);
  CHECK(first.set == second.set);
  REQUIRE(first.trace.size() == second.trace.size());
  for (std::size_t i = 0; i < first.trace.size(); ++i) {
    CHECK(first.trace[i].iterate == second.trace[i].iterate);
    CHECK(first.trace[i].objective == doctest::Approx(second.trace[i].objective).epsilon(1e-15));
  }
}

TEST_CASE("average surrogate solves the crossed modular instance") {
  std::vector<SetFunctionHandle> fs = {modular({1, 0}), modular({0, 1})};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(2, 1);
  RobustSolution sol = aa_submin(fs, c);
  CHECK(sol.method == "aa");
  CHECK(sol.worst_value == doctest::Approx(1.0));
  CHECK(sol.set.size() == 1);

  const double favg = aggregate(fs, AggregateMode::Avg, sol.set);
  const double fmax = aggregate(fs, AggregateMode::Max, sol.set);
  CHECK(favg <= fmax + 1e-12);
  CHECK(fmax <= 2.0 * favg + 1e-12);
}

TEST_CASE("average surrogate equals majorize-minimize when l is one") {
  Rng rng(14);
  const int n = 7;
  std::vector<SetFunctionHandle> fs = {build(random_spec(rng, n, 5), n)};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(n, 3);
  CHECK(aa_submin(fs, c).worst_value ==
        doctest::Approx(mmin_robust_submin(fs, c).worst_value).epsilon(1e-12));
}

TEST_CASE("relaxation solver on the triangle cover") {
  ConstraintFamily c = ConstraintFamily::vertex_cover(triangle_vertex_graph());
  std::vector<SetFunctionHandle> fs = {modular({1, 1, 1})};
  RobustSolution sol = cr_submin(fs, c.covering_polytope(), c);
  CHECK(sol.method == "cr");
  CHECK(c.is_feasible(sol.set));
  CHECK(sol.continuous_value == doctest::Approx(1.5).epsilon(0.02));
  CHECK(sol.worst_value == doctest::Approx(2.0));
  CHECK(sol.worst_value <= 2.0 * sol.continuous_value + 1e-3);
}

TEST_CASE("relaxation solver returns the cheapest elements under a size floor") {
  std::vector<SetFunctionHandle> fs = {modular({5, 1, 4, 2, 3})};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(5, 2);
  RobustSolution sol = cr_submin(fs, c.covering_polytope(), c);
  CHECK(sol.set.ids() == std::vector<ElementId>{1, 3});
  CHECK(sol.worst_value == doctest::Approx(3.0));
}

TEST_CASE("relaxation solver keeps a vertex optimum intact") {
  std::vector<SetFunctionHandle> fs = {modular({0.01, 10, 10})};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(3, 1);
  RobustSolution sol = cr_submin(fs, c.covering_polytope(), c);
  CHECK(sol.set.ids() == std::vector<ElementId>{0});
}

TEST_CASE("certificate construction validates the square root inequality") {
  SetFunctionHandle f = sqrt_card(4);
  std::vector<double> good(4, 1.0);
  EACertificate cert = make_ea_certificate(f, good, true);
  CHECK(cert.exact);
  std::vector<double> bad(4, 9.0);
  CHECK_THROWS_AS(make_ea_certificate(f, bad, false), ValidationError);
  std::vector<double> slack(4, 0.5);
  CHECK(!make_ea_certificate(f, slack, false).exact);
  CHECK_THROWS_AS(make_ea_certificate(f, slack, true), ValidationError);
}

TEST_CASE("square root surrogate solves the crossed instance") {
  const int n = 2;
  auto sqrt_modular = [&](std::vector<double> w) {
    std::vector<std::vector<ElementId>> clusters(1);
    for (int j = 0; j < n; ++j) clusters[0].push_back(j);
    return build(FunctionSpec::clustered_sqrt(std::move(w), std::move(clusters)), n);
  };
  SetFunctionHandle f1 = sqrt_modular({9, 1});
  SetFunctionHandle f2 = sqrt_modular({1, 9});
  std::vector<EACertificate> certs = {make_ea_certificate(f1, {9, 1}, true),
                                      make_ea_certificate(f2, {1, 9}, true)};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(2, 1);
  RobustSolution sol = ea_submin(certs, c);
  CHECK(sol.method == "ea");
  CHECK(sol.worst_value == doctest::Approx(3.0));
  std::vector<SetFunctionHandle> fs = {f1, f2};
  CHECK(brute_force_min_max(fs, c).value == doctest::Approx(3.0));
}

TEST_CASE("square root surrogate with one exact certificate is the linear oracle") {
  Rng rng(15);
  const int n = 6;
  std::vector<double> w = rng.uniform_vector(n, 0.2, 3.0);
  std::vector<std::vector<ElementId>> clusters(1);
  for (int j = 0; j < n; ++j) clusters[0].push_back(j);
  SetFunctionHandle f = build(FunctionSpec::clustered_sqrt(w, clusters), n);
  std::vector<EACertificate> certs = {make_ea_certificate(f, w, true)};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(n, 2);
  RobustSolution sol = ea_submin(certs, c);
  CHECK(sol.set == c.min_modular(w));
  CHECK(std::isfinite(sol.apriori_bound));
}
