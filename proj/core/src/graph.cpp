#include "robsub/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace robsub {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool edge_allowed(const ElementSet* allowed, int e) {
  return allowed == nullptr || allowed->contains(e);
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

void check_weights(const GraphSpec& g, std::span<const double> w) {
  if (static_cast<int>(w.size()) != g.num_edges())
    throw ValidationError("graph: weight count != edge count");
  for (double x : w)
    if (!(x >= 0.0)) throw ValidationError("graph: edge weights must be nonnegative");
}

// Adjacency as (neighbor, edge id); directed graphs only get forward arcs.
std::vector<std::vector<std::pair<int, int>>> adjacency(const GraphSpec& g,
                                                        const ElementSet* allowed) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.num_nodes));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edge_allowed(allowed, e)) continue;
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(u)].emplace_back(v, e);
    if (!g.directed) adj[static_cast<std::size_t>(v)].emplace_back(u, e);
  }
  return adj;
}

}  // namespace

void GraphSpec::validate(bool needs_st) const {
  if (num_nodes < 0) throw ValidationError("graph: negative node count");
  for (const auto& [u, v] : edges)
    if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes)
      throw ValidationError("graph: edge endpoint out of range");
  if (needs_st) {
    if (s < 0 || s >= num_nodes || t < 0 || t >= num_nodes)
      throw ValidationError("graph: s/t out of range");
    if (s == t) throw ValidationError("graph: s and t must differ");
  }
}

std::vector<ElementId> minimum_spanning_tree(const GraphSpec& g, std::span<const double> w,
                                             const ElementSet* allowed) {
  check_weights(g, w);
  std::vector<int> order;
  for (int e = 0; e < g.num_edges(); ++e)
    if (edge_allowed(allowed, e)) order.push_back(e);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return w[static_cast<std::size_t>(a)] < w[static_cast<std::size_t>(b)];
  });
  Dsu dsu(g.num_nodes);
  std::vector<ElementId> tree;
  for (int e : order) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if (dsu.unite(u, v)) tree.push_back(e);
  }
  if (static_cast<int>(tree.size()) != g.num_nodes - 1)
    throw InfeasibleError("spanning tree: graph is not connected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::vector<ElementId> shortest_st_path(const GraphSpec& g, std::span<const double> w,
                                        const ElementSet* allowed) {
  check_weights(g, w);
  const auto adj = adjacency(g, allowed);
  std::vector<double> dist(static_cast<std::size_t>(g.num_nodes), kInf);
  std::vector<int> parent_edge(static_cast<std::size_t>(g.num_nodes), -1);
  std::vector<int> parent_node(static_cast<std::size_t>(g.num_nodes), -1);
  using Item = std::pair<double, int>;  // (distance, node)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[static_cast<std::size_t>(g.s)] = 0.0;
  heap.emplace(0.0, g.s);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& [v, e] : adj[static_cast<std::size_t>(u)]) {
      const double nd = d + w[static_cast<std::size_t>(e)];
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        parent_edge[static_cast<std::size_t>(v)] = e;
        parent_node[static_cast<std::size_t>(v)] = u;
        heap.emplace(nd, v);
      }
    }
  }
  if (dist[static_cast<std::size_t>(g.t)] == kInf)
    throw InfeasibleError("shortest path: t unreachable from s");
  std::vector<ElementId> path;
  for (int v = g.t; v != g.s; v = parent_node[static_cast<std::size_t>(v)])
    path.push_back(parent_edge[static_cast<std::size_t>(v)]);
  std::sort(path.begin(), path.end());
  return path;
}

MinCutResult min_st_cut(const GraphSpec& g, std::span<const double> capacity) {
  check_weights(g, capacity);
  // Residual arc list: forward/backward pairs at indices 2i, 2i+1.
  struct Arc {
    int to;
    double cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(static_cast<std::size_t>(g.num_nodes));
  auto add_pair = [&](int u, int v, double c_uv, double c_vu) {
    out[static_cast<std::size_t>(u)].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({v, c_uv});
    out[static_cast<std::size_t>(v)].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({u, c_vu});
  };
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    const double c = capacity[static_cast<std::size_t>(e)];
    add_pair(u, v, c, g.directed ? 0.0 : c);
  }

  double flow = 0.0;
  while (true) {
    // BFS for an augmenting path in the residual graph.
    std::vector<int> pred_arc(static_cast<std::size_t>(g.num_nodes), -1);
    std::vector<char> seen(static_cast<std::size_t>(g.num_nodes), 0);
    std::queue<int> q;
    q.push(g.s);
    seen[static_cast<std::size_t>(g.s)] = 1;
    while (!q.empty() && !seen[static_cast<std::size_t>(g.t)]) {
      const int u = q.front();
      q.pop();
      for (int a : out[static_cast<std::size_t>(u)]) {
        if (arcs[static_cast<std::size_t>(a)].cap <= 1e-12) continue;
        const int v = arcs[static_cast<std::size_t>(a)].to;
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          pred_arc[static_cast<std::size_t>(v)] = a;
          q.push(v);
        }
      }
    }
    if (!seen[static_cast<std::size_t>(g.t)]) break;
    double push = kInf;
    for (int v = g.t; v != g.s;) {
      const int a = pred_arc[static_cast<std::size_t>(v)];
      push = std::min(push, arcs[static_cast<std::size_t>(a)].cap);
      v = arcs[static_cast<std::size_t>(a ^ 1)].to;
    }
    for (int v = g.t; v != g.s;) {
      const int a = pred_arc[static_cast<std::size_t>(v)];
      arcs[static_cast<std::size_t>(a)].cap -= push;
      arcs[static_cast<std::size_t>(a ^ 1)].cap += push;
      v = arcs[static_cast<std::size_t>(a ^ 1)].to;
    }
    flow += push;
  }

  // Source side of the cut = residual-reachable set.
  std::vector<char> reach(static_cast<std::size_t>(g.num_nodes), 0);
  std::queue<int> q;
  q.push(g.s);
  reach[static_cast<std::size_t>(g.s)] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int a : out[static_cast<std::size_t>(u)]) {
      if (arcs[static_cast<std::size_t>(a)].cap <= 1e-12) continue;
      const int v = arcs[static_cast<std::size_t>(a)].to;
      if (!reach[static_cast<std::size_t>(v)]) {
        reach[static_cast<std::size_t>(v)] = 1;
        q.push(v);
      }
    }
  }
  MinCutResult res;
  res.value = flow;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    const bool ru = reach[static_cast<std::size_t>(u)] != 0;
    const bool rv = reach[static_cast<std::size_t>(v)] != 0;
    if (g.directed ? (ru && !rv) : (ru != rv)) res.cut_edges.push_back(e);
  }
  return res;
}

std::optional<std::vector<int>> bipartition(const GraphSpec& g) {
  std::vector<int> side(static_cast<std::size_t>(g.num_nodes), -1);
  const auto adj = adjacency(g, nullptr);
  for (int start = 0; start < g.num_nodes; ++start) {
    if (side[static_cast<std::size_t>(start)] != -1) continue;
    side[static_cast<std::size_t>(start)] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& [v, e] : adj[static_cast<std::size_t>(u)]) {
        (void)e;
        if (side[static_cast<std::size_t>(v)] == -1) {
          side[static_cast<std::size_t>(v)] = 1 - side[static_cast<std::size_t>(u)];
          q.push(v);
        } else if (side[static_cast<std::size_t>(v)] == side[static_cast<std::size_t>(u)]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

std::vector<ElementId> min_cost_perfect_matching(const GraphSpec& g, std::span<const double> w,
                                                 const ElementSet* allowed) {
  check_weights(g, w);
  const auto sides = bipartition(g);
  if (!sides) throw ValidationError("perfect matching: graph is not bipartite");
  std::vector<int> left, right;
  for (int v = 0; v < g.num_nodes; ++v)
    ((*sides)[static_cast<std::size_t>(v)] == 0 ? left : right).push_back(v);
  const int m = static_cast<int>(left.size());
  if (m != static_cast<int>(right.size()))
    throw InfeasibleError("perfect matching: sides have different sizes");
  if (m == 0) return {};
  std::vector<int> pos(static_cast<std::size_t>(g.num_nodes), -1);
  for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(left[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(right[static_cast<std::size_t>(i)])] = i;

  // Cheapest edge (and its id) per (left, right) pair; parallel edges keep
  // the lower id on weight ties.
  const double kBig = 1e18;
  std::vector<std::vector<double>> cost(static_cast<std::size_t>(m),
                                        std::vector<double>(static_cast<std::size_t>(m), kBig));
  std::vector<std::vector<int>> eid(static_cast<std::size_t>(m),
                                    std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edge_allowed(allowed, e)) continue;
    auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if ((*sides)[static_cast<std::size_t>(u)] == 1) std::swap(u, v);
    const int i = pos[static_cast<std::size_t>(u)];
    const int j = pos[static_cast<std::size_t>(v)];
    if (w[static_cast<std::size_t>(e)] < cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
      cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(e)];
      eid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
    }
  }

  // Hungarian algorithm with potentials, 1-indexed internals.
  std::vector<double> u(static_cast<std::size_t>(m + 1), 0.0), v(static_cast<std::size_t>(m + 1), 0.0);
  std::vector<int> match(static_cast<std::size_t>(m + 1), 0), way(static_cast<std::size_t>(m + 1), 0);
  for (int i = 1; i <= m; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m + 1), kBig);
    std::vector<char> used(static_cast<std::size_t>(m + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = match[static_cast<std::size_t>(j0)];
      double delta = kBig;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<ElementId> picked;
  double total = 0.0;
  for (int j = 1; j <= m; ++j) {
    const int i = match[static_cast<std::size_t>(j)];
    const int e = eid[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    if (e < 0) throw InfeasibleError("perfect matching: no perfect matching exists");
    total += cost[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    picked.push_back(e);
  }
  if (total >= kBig / 2) throw InfeasibleError("perfect matching: no perfect matching exists");
  std::sort(picked.begin(), picked.end());
  return picked;
}

int max_bipartite_matching_size(const GraphSpec& g, const ElementSet& edges) {
  const auto sides = bipartition(g);
  if (!sides) throw ValidationError("matching: graph is not bipartite");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_nodes));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edges.contains(e)) continue;
    auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if ((*sides)[static_cast<std::size_t>(u)] == 1) std::swap(u, v);
    adj[static_cast<std::size_t>(u)].push_back(v);
  }
  std::vector<int> match_of(static_cast<std::size_t>(g.num_nodes), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      if (match_of[static_cast<std::size_t>(v)] == -1 ||
          self(self, match_of[static_cast<std::size_t>(v)])) {
        match_of[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int v = 0; v < g.num_nodes; ++v) {
    if ((*sides)[static_cast<std::size_t>(v)] != 0) continue;
    visited.assign(static_cast<std::size_t>(g.num_nodes), 0);
    if (augment(augment, v)) ++size;
  }
  return size;
}

bool spans_all_nodes(const GraphSpec& g, const ElementSet& edges) {
  if (g.num_nodes <= 1) return true;
  Dsu dsu(g.num_nodes);
  int components = g.num_nodes;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edges.contains(e)) continue;
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if (dsu.unite(u, v)) --components;
  }
  return components == 1;
}

bool is_spanning_tree(const GraphSpec& g, const ElementSet& edges) {
  return edges.size() == g.num_nodes - 1 && spans_all_nodes(g, edges);
}

bool is_simple_st_path(const GraphSpec& g, const ElementSet& edges) {
  if (edges.empty()) return false;
  // Walk from s following unused edges; each visited node must be new and
  // offer exactly one way forward until t consumes the last edge.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.num_nodes));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edges.contains(e)) continue;
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(u)].emplace_back(v, e);
    if (!g.directed) adj[static_cast<std::size_t>(v)].emplace_back(u, e);
  }
  std::vector<char> node_seen(static_cast<std::size_t>(g.num_nodes), 0);
  std::vector<char> edge_used(static_cast<std::size_t>(g.num_edges()), 0);
  int cur = g.s;
  node_seen[static_cast<std::size_t>(cur)] = 1;
  int used = 0;
  while (cur != g.t) {
    int next = -1, via = -1;
    for (const auto& [v, e] : adj[static_cast<std::size_t>(cur)]) {
      if (edge_used[static_cast<std::size_t>(e)]) continue;
      if (next != -1) return false;  // branching
      next = v;
      via = e;
    }
    if (next == -1) return false;  // dead end before t
    if (node_seen[static_cast<std::size_t>(next)]) return false;
    node_seen[static_cast<std::size_t>(next)] = 1;
    edge_used[static_cast<std::size_t>(via)] = 1;
    ++used;
    cur = next;
  }
  if (used != edges.size()) return false;  // stray edges off the path
  // t must not have an unused incident edge from the set.
  for (const auto& [v, e] : adj[static_cast<std::size_t>(g.t)]) {
    (void)v;
    if (!edge_used[static_cast<std::size_t>(e)]) return false;
  }
  return true;
}

bool is_perfect_matching(const GraphSpec& g, const ElementSet& edges) {
  std::vector<int> degree(static_cast<std::size_t>(g.num_nodes), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edges.contains(e)) continue;
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if (u == v) return false;
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
  }
  for (int d : degree)
    if (d != 1) return false;
  return true;
}

bool st_connected(const GraphSpec& g, const ElementSet& edges) {
  const auto adj = adjacency(g, &edges);
  std::vector<char> seen(static_cast<std::size_t>(g.num_nodes), 0);
  std::queue<int> q;
  q.push(g.s);
  seen[static_cast<std::size_t>(g.s)] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    if (u == g.t) return true;
    for (const auto& [v, e] : adj[static_cast<std::size_t>(u)]) {
      (void)e;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        q.push(v);
      }
    }
  }
  return false;
}

}  // namespace robsub
