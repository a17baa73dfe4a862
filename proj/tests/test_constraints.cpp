#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "robsub/constraints.hpp"
#include "robsub/graph.hpp"
#include "robsub/oracle.hpp"
#include "robsub/rng.hpp"
#include "test_common.hpp"

using namespace robsub;
using namespace robsub::testutil;

namespace {

double cost_of(const ElementSet& s, const std::vector<double>& w) {
  double total = 0.0;
  for (ElementId j : s.ids()) total += w[static_cast<std::size_t>(j)];
  return total;
}

// Exhaustive reference for min_modular.
double best_feasible_cost(const ConstraintFamily& c, const std::vector<double>& w) {
  const int n = c.universe_size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet s = ElementSet::from_mask(n, mask);
    if (c.is_feasible(s)) best = std::min(best, cost_of(s, w));
  }
  return best;
}

}  // namespace

TEST_CASE("spanning tree oracle on the triangle") {
  ConstraintFamily c = ConstraintFamily::spanning_tree(triangle_graph());
  std::vector<double> w = {1, 2, 3};
  ElementSet tree = c.min_modular(w);
  CHECK(cost_of(tree, w) == doctest::Approx(3.0));
  CHECK(tree.ids() == std::vector<ElementId>{0, 1});
  CHECK(c.is_feasible(tree));
  CHECK(!c.is_feasible(ElementSet::full(3)));
  CHECK(c.contains_feasible_subset(ElementSet::full(3)));
}

TEST_CASE("cardinality lower bound picks the cheapest elements") {
  ConstraintFamily c = ConstraintFamily::cardinality_lower(3, 2);
  std::vector<double> w = {5, 1, 3};
  ElementSet s = c.min_modular(w);
  CHECK(s.ids() == std::vector<ElementId>{1, 2});
  CHECK(cost_of(s, w) == doctest::Approx(4.0));
  CHECK(!c.is_feasible(ElementSet::of(3, {0})));
  CHECK(c.contains_feasible_subset(ElementSet::full(3)));
  CHECK_THROWS_AS(ConstraintFamily::cardinality_lower(3, 4), InfeasibleError);
}

TEST_CASE("cardinality upper bound") {
  ConstraintFamily c = ConstraintFamily::cardinality_upper(3, 2);
  CHECK(c.is_feasible(ElementSet::of(3, {0, 1})));
  CHECK(!c.is_feasible(ElementSet::full(3)));
  CHECK(c.min_modular(std::vector<double>{1, 1, 1}).empty());
}

TEST_CASE("shortest path beats the direct shortcut") {
  ConstraintFamily c = ConstraintFamily::st_path(line_with_shortcut());
  std::vector<double> w = {1, 1, 3};
  ElementSet path = c.min_modular(w);
  CHECK(cost_of(path, w) == doctest::Approx(2.0));
  CHECK(path.ids() == std::vector<ElementId>{0, 1});
  CHECK(c.is_feasible(ElementSet::of(3, {2})));
  CHECK(!c.is_feasible(ElementSet::full(3)));
  CHECK(!c.contains_feasible_subset(ElementSet::of(3, {0})));
}

TEST_CASE("perfect matching on a 2x2 bipartite graph") {
  ConstraintFamily c = ConstraintFamily::perfect_matching(k22_graph());
  CHECK(c.is_feasible(ElementSet::of(4, {0, 3})));
  CHECK(c.is_feasible(ElementSet::of(4, {1, 2})));
  CHECK(!c.is_feasible(ElementSet::of(4, {0, 1})));
  std::vector<double> w = {1, 5, 5, 1};
  ElementSet m = c.min_modular(w);
  CHECK(cost_of(m, w) == doctest::Approx(2.0));
}

TEST_CASE("cut family disconnects the terminals") {
  GraphSpec g = line_with_shortcut();
  ConstraintFamily c = ConstraintFamily::st_cut(g);
  CHECK(c.is_feasible(ElementSet::of(3, {0, 2})));
  CHECK(c.is_feasible(ElementSet::of(3, {1, 2})));
  CHECK(!c.is_feasible(ElementSet::of(3, {0})));
  std::vector<double> w = {2, 3, 4};
  ElementSet cut = c.min_modular(w);
  CHECK(c.is_feasible(cut));
  CHECK(cost_of(cut, w) == doctest::Approx(best_feasible_cost(c, w)));
}

TEST_CASE("vertex cover is a declared 2-approximation") {
  ConstraintFamily c = ConstraintFamily::vertex_cover(triangle_vertex_graph());
  CHECK(c.oracle_alpha() == doctest::Approx(2.0));
  CHECK(c.is_feasible(ElementSet::of(3, {0, 1})));
  CHECK(!c.is_feasible(ElementSet::of(3, {0})));
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> w = rng.uniform_vector(3, 0.1, 2.0);
    ElementSet s = c.min_modular(w);
    CHECK(c.is_feasible(s));
    CHECK(cost_of(s, w) <= 2.0 * best_feasible_cost(c, w) + 1e-9);
  }
}

TEST_CASE("covering polytope shapes") {
  ConstraintFamily vc = ConstraintFamily::vertex_cover(triangle_vertex_graph());
  CoveringFamily poly = vc.covering_polytope();
  CHECK(poly.constraints().size() == 3);
  for (const auto& cc : poly.constraints()) {
    CHECK(cc.elements.size() == 2);
    CHECK(cc.bound == 1);
  }
  CHECK(poly.rounding_factor() == doctest::Approx(2.0));

  CHECK(ConstraintFamily::cardinality_lower(5, 5).covering_polytope().rounding_factor() ==
        doctest::Approx(1.0));
  CHECK(ConstraintFamily::cardinality_lower(5, 2).covering_polytope().rounding_factor() ==
        doctest::Approx(4.0));

  ConstraintFamily tree = ConstraintFamily::spanning_tree(triangle_graph());
  CHECK(!tree.has_covering_family());
  CHECK_THROWS_AS(tree.covering_polytope(), UnsupportedError);
  tree.set_covering_family(
      CoveringFamily(3, {CoveringConstraint{{0, 1, 2}, 2}}));
  CHECK(tree.has_covering_family());
  CHECK(tree.covering_polytope().rounding_factor() == doctest::Approx(2.0));
}

TEST_CASE("feasible indicators satisfy the covering inequalities") {
  Rng rng(17);
  ConstraintFamily c = ConstraintFamily::cardinality_lower(8, 3);
  CoveringFamily poly = c.covering_polytope();
  int seen = 0;
  while (seen < 100) {
    ElementSet s = rng.random_subset(8, 0.6);
    if (!c.is_feasible(s)) continue;
    ++seen;
    CHECK(poly.satisfied(s));
  }
}

TEST_CASE("membership implies up-closure membership and monotonicity") {
  Rng rng(21);
  std::vector<ConstraintFamily> families;
  families.push_back(ConstraintFamily::spanning_tree(random_connected_graph(rng, 5, 3)));
  families.push_back(ConstraintFamily::cardinality_lower(7, 3));
  families.push_back(ConstraintFamily::vertex_cover(triangle_vertex_graph()));
  for (const auto& c : families) {
    const int n = c.universe_size();
    for (int t = 0; t < 100; ++t) {
      ElementSet s = rng.random_subset(n);
      if (c.is_feasible(s)) CHECK(c.contains_feasible_subset(s));
      if (c.contains_feasible_subset(s)) {
        ElementSet bigger = s;
        for (int j = 0; j < n; ++j)
          if (rng.bernoulli(0.3)) bigger.add(j);
        CHECK(c.contains_feasible_subset(bigger));
      }
    }
  }
}

TEST_CASE("exact oracles match enumeration on random instances") {
  Rng rng(33);
  for (int t = 0; t < 10; ++t) {
    GraphSpec g = random_connected_graph(rng, 5, 3);
    ConstraintFamily tree = ConstraintFamily::spanning_tree(g);
    std::vector<double> w = rng.uniform_vector(g.num_edges(), 0.1, 2.0);
    CHECK(cost_of(tree.min_modular(w), w) ==
          doctest::Approx(best_feasible_cost(tree, w)).epsilon(1e-9));

    GraphSpec path = g;
    path.s = 0;
    path.t = g.num_nodes - 1;
    ConstraintFamily st = ConstraintFamily::st_path(path);
    CHECK(cost_of(st.min_modular(w), w) ==
          doctest::Approx(best_feasible_cost(st, w)).epsilon(1e-9));

    ConstraintFamily cut = ConstraintFamily::st_cut(path);
    CHECK(cost_of(cut.min_modular(w), w) ==
          doctest::Approx(best_feasible_cost(cut, w)).epsilon(1e-9));

    ConstraintFamily card = ConstraintFamily::cardinality_lower(6, rng.uniform_int(1, 4));
    std::vector<double> cw = rng.uniform_vector(6, 0.1, 2.0);
    CHECK(cost_of(card.min_modular(cw), cw) ==
          doctest::Approx(best_feasible_cost(card, cw)).epsilon(1e-9));

    ConstraintFamily match = ConstraintFamily::perfect_matching(k22_graph());
    std::vector<double> mw = rng.uniform_vector(4, 0.1, 2.0);
    CHECK(cost_of(match.min_modular(mw), mw) ==
          doctest::Approx(best_feasible_cost(match, mw)).epsilon(1e-9));
  }
}

TEST_CASE("restricted oracle honors the allowed set") {
  ConstraintFamily c = ConstraintFamily::cardinality_lower(4, 2);
  std::vector<double> w = {1, 10, 2, 3};
  ElementSet allowed = ElementSet::of(4, {1, 2, 3});
  ElementSet s = c.min_modular(w, &allowed);
  CHECK(s.is_subset_of(allowed));
  CHECK(cost_of(s, w) == doctest::Approx(5.0));
  ElementSet tiny = ElementSet::of(4, {0});
  CHECK_THROWS_AS(c.min_modular(w, &tiny), InfeasibleError);
}

TEST_CASE("graph helpers") {
  CHECK(bipartition(k22_graph()).has_value());
  CHECK(!bipartition(triangle_graph()).has_value());
  GraphSpec g = line_with_shortcut();
  MinCutResult cut = min_st_cut(g, std::vector<double>{2, 3, 4});
  CHECK(cut.value == doctest::Approx(6.0));
  CHECK(st_connected(g, ElementSet::of(3, {2})));
  CHECK(!st_connected(g, ElementSet::of(3, {0})));
}
