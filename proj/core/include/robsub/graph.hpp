#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "robsub/types.hpp"

namespace robsub {

enum class GroundMapping { Edges, Vertices };

// Graph backing a combinatorial constraint family. The optimization ground
// set is either the edge list (trees, paths, matchings, cuts) or the vertex
// list (vertex cover), per `mapping`.
struct GraphSpec {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;
  bool directed = false;
  int s = -1;
  int t = -1;
  GroundMapping mapping = GroundMapping::Edges;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int ground_size() const {
    return mapping == GroundMapping::Edges ? num_edges() : num_nodes;
  }
  void validate(bool needs_st = false) const;
};

// All algorithms below are deterministic: ties resolve by edge id.
// `allowed == nullptr` means every edge is usable.

// Kruskal. Throws InfeasibleError when the allowed edges do not span.
std::vector<ElementId> minimum_spanning_tree(const GraphSpec& g, std::span<const double> w,
                                             const ElementSet* allowed = nullptr);

// Dijkstra over nonnegative edge weights; returns the edge ids of a cheapest
// s-t path. Throws InfeasibleError when t is unreachable.
std::vector<ElementId> shortest_st_path(const GraphSpec& g, std::span<const double> w,
                                        const ElementSet* allowed = nullptr);

struct MinCutResult {
  double value = 0.0;
  std::vector<ElementId> cut_edges;
};

// Max-flow (BFS augmentation) with per-edge capacities; returns the cut
// induced by residual reachability from s.
MinCutResult min_st_cut(const GraphSpec& g, std::span<const double> capacity);

// Two-coloring of an undirected graph; nullopt when an odd cycle exists.
// Isolated vertices go to side 0.
std::optional<std::vector<int>> bipartition(const GraphSpec& g);

// Hungarian algorithm on the bipartition; returns edge ids of a minimum
// weight perfect matching. Throws InfeasibleError when none exists.
std::vector<ElementId> min_cost_perfect_matching(const GraphSpec& g, std::span<const double> w,
                                                 const ElementSet* allowed = nullptr);

// Size of a maximum matching using only the given edges (augmenting paths).
int max_bipartite_matching_size(const GraphSpec& g, const ElementSet& edges);

// Structure predicates over an edge subset.
bool spans_all_nodes(const GraphSpec& g, const ElementSet& edges);
bool is_spanning_tree(const GraphSpec& g, const ElementSet& edges);
bool is_simple_st_path(const GraphSpec& g, const ElementSet& edges);
bool is_perfect_matching(const GraphSpec& g, const ElementSet& edges);
// Reachability s -> t using only the given edges (respects direction).
bool st_connected(const GraphSpec& g, const ElementSet& edges);

}  // namespace robsub
