#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/graph.hpp"
#include "robsub/rng.hpp"
#include "robsub/types.hpp"

namespace robsub::testutil {

inline SetFunctionHandle build(const FunctionSpec& s, int n) {
  return build_function(s, GroundSet(n));
}

inline SetFunctionHandle modular(std::vector<double> w) {
  const int n = static_cast<int>(w.size());
  return build(FunctionSpec::modular(std::move(w)), n);
}

// f(X) = sqrt(|X|): one cluster, unit weights.
inline SetFunctionHandle sqrt_card(int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  std::vector<std::vector<ElementId>> clusters(1);
  for (int j = 0; j < n; ++j) clusters[0].push_back(j);
  return build(FunctionSpec::clustered_sqrt(std::move(w), std::move(clusters)), n);
}

// f(X) = min(|X|, 1), the fully curved indicator of nonemptiness.
inline SetFunctionHandle any_indicator(int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  return make_truncated(modular(std::move(w)), 1.0);
}

constexpr int kFamilyCount = 7;

// One random spec per shipped family; index selects the family so callers
// can sweep all of them.
inline FunctionSpec random_spec(Rng& rng, int n, int family) {
  switch (family % kFamilyCount) {
    case 0:
      return FunctionSpec::modular(rng.uniform_vector(n, 0.1, 3.0));
    case 1: {
      const int parts = rng.uniform_int(1, std::max(1, std::min(3, n)));
      std::vector<std::vector<ElementId>> clusters(static_cast<std::size_t>(parts));
      for (int j = 0; j < n; ++j)
        clusters[static_cast<std::size_t>(rng.uniform_int(0, parts - 1))].push_back(j);
      std::erase_if(clusters, [](const auto& c) { return c.empty(); });
      if (clusters.empty()) clusters.push_back({});
      return FunctionSpec::clustered_sqrt(rng.uniform_vector(n, 0.1, 2.0), std::move(clusters));
    }
    case 2: {
      std::vector<std::vector<double>> sim(static_cast<std::size_t>(n));
      for (auto& row : sim) row = rng.uniform_vector(n, 0.0, 1.0);
      return FunctionSpec::facility_location(std::move(sim));
    }
    case 3: {
      const int d = rng.uniform_int(1, 4);
      std::vector<std::vector<double>> feats(static_cast<std::size_t>(n));
      for (auto& row : feats) row = rng.uniform_vector(d, 0.0, 1.5);
      return FunctionSpec::feature_based(std::move(feats),
                                         rng.bernoulli(0.5) ? ConcaveKind::Sqrt
                                                            : ConcaveKind::Log1p);
    }
    case 4: {
      const int items = std::max(1, n);
      std::vector<std::vector<int>> cover(static_cast<std::size_t>(n));
      for (auto& c : cover) {
        for (int it = 0; it < items; ++it)
          if (rng.bernoulli(0.4)) c.push_back(it);
      }
      return FunctionSpec::coverage(std::move(cover), rng.uniform_vector(items, 0.2, 2.0));
    }
    case 5: {
      std::vector<double> w = rng.uniform_vector(n, 0.1, 2.0);
      double total = 0.0;
      for (double x : w) total += x;
      return FunctionSpec::truncation(FunctionSpec::modular(std::move(w)),
                                      total * rng.uniform(0.3, 0.9));
    }
    default: {
      std::vector<FunctionSpec> terms;
      terms.push_back(FunctionSpec::modular(rng.uniform_vector(n, 0.1, 1.0)));
      terms.push_back(random_spec(rng, n, 1));
      return FunctionSpec::weighted_sum(std::move(terms),
                                        {rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0)});
    }
  }
}

inline GraphSpec triangle_graph() {
  GraphSpec g;
  g.num_nodes = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  return g;
}

inline GraphSpec triangle_vertex_graph() {
  GraphSpec g = triangle_graph();
  g.mapping = GroundMapping::Vertices;
  return g;
}

// s - a - t line plus the direct s - t edge: edges (s,a), (a,t), (s,t).
inline GraphSpec line_with_shortcut() {
  GraphSpec g;
  g.num_nodes = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  g.s = 0;
  g.t = 2;
  return g;
}

inline GraphSpec k22_graph() {
  GraphSpec g;
  g.num_nodes = 4;
  g.edges = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  return g;
}

// Connected graph: random spanning tree plus a few extra edges.
inline GraphSpec random_connected_graph(Rng& rng, int nodes, int extra) {
  GraphSpec g;
  g.num_nodes = nodes;
  std::vector<int> order = rng.permutation(nodes);
  for (int i = 1; i < nodes; ++i) {
    const int parent = order[static_cast<std::size_t>(rng.uniform_int(0, i - 1))];
    const int child = order[static_cast<std::size_t>(i)];
    g.edges.emplace_back(std::min(parent, child), std::max(parent, child));
  }
  for (int e = 0; e < extra; ++e) {
    const int u = rng.uniform_int(0, nodes - 1);
    const int v = rng.uniform_int(0, nodes - 1);
    if (u == v) continue;
    auto edge = std::make_pair(std::min(u, v), std::max(u, v));
    bool dup = false;
    for (const auto& have : g.edges) dup = dup || have == edge;
    if (!dup) g.edges.push_back(edge);
  }
  return g;
}

inline double max_value_over(const std::vector<SetFunctionHandle>& fs, const ElementSet& s) {
  double best = 0.0;
  for (const auto& f : fs) best = std::max(best, f.eval(s));
  return best;
}

inline double min_value_over(const std::vector<SetFunctionHandle>& fs, const ElementSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : fs) best = std::min(best, f.eval(s));
  return fs.empty() ? 0.0 : best;
}

}  // namespace robsub::testutil
