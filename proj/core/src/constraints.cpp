#include "robsub/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace robsub {
namespace {

constexpr double kBig = 1e18;

void check_costs(std::span<const double> w, int n) {
  if (static_cast<int>(w.size()) != n)
    throw ValidationError("min_modular: cost count != universe size");
  for (double x : w)
    if (!(x >= 0.0)) throw ValidationError("min_modular: costs must be nonnegative");
}

double knapsack_load(const Knapsack& ks, const ElementSet& s) {
  double total = 0.0;
  for (ElementId j : s.ids()) total += ks.weights[static_cast<std::size_t>(j)];
  return total;
}

}  // namespace

CoveringFamily::CoveringFamily(int universe_size, std::vector<CoveringConstraint> constraints)
    : universe_size_(universe_size), constraints_(std::move(constraints)) {
  if (universe_size_ < 0) throw ValidationError("covering family: negative universe");
  for (const auto& c : constraints_) {
    if (c.elements.empty()) throw ValidationError("covering family: empty constraint");
    std::vector<char> seen(static_cast<std::size_t>(universe_size_), 0);
    for (ElementId j : c.elements) {
      if (j < 0 || j >= universe_size_)
        throw OutOfRangeError("covering family: element out of range");
      if (seen[static_cast<std::size_t>(j)])
        throw ValidationError("covering family: duplicate element in constraint");
      seen[static_cast<std::size_t>(j)] = 1;
    }
    if (c.bound < 1 || c.bound > static_cast<int>(c.elements.size()))
      throw ValidationError("covering family: bound must satisfy 1 <= bound <= |W|");
  }
}

double CoveringFamily::rounding_factor() const {
  double factor = 1.0;
  for (const auto& c : constraints_)
    factor = std::max(factor, static_cast<double>(c.elements.size()) - c.bound + 1.0);
  return factor;
}

bool CoveringFamily::satisfied(const ElementSet& s) const {
  if (s.universe_size() != universe_size_)
    throw ValidationError("covering family: set universe mismatch");
  for (const auto& c : constraints_) {
    int hit = 0;
    for (ElementId j : c.elements)
      if (s.contains(j)) ++hit;
    if (hit < c.bound) return false;
  }
  return true;
}

bool CoveringFamily::satisfied(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != universe_size_)
    throw ValidationError("covering family: coordinate count mismatch");
  for (const auto& c : constraints_) {
    double mass = 0.0;
    for (ElementId j : c.elements) mass += x[static_cast<std::size_t>(j)];
    if (mass < c.bound - tol) return false;
  }
  return true;
}

ConstraintFamily ConstraintFamily::cardinality_lower(int universe_size, int k) {
  if (universe_size < 0) throw ValidationError("cardinality: negative universe");
  if (k < 0 || k > universe_size)
    throw InfeasibleError("cardinality lower bound: k must satisfy 0 <= k <= n");
  ConstraintFamily c;
  c.kind_ = ConstraintKind::CardinalityLower;
  c.universe_size_ = universe_size;
  c.k_ = k;
  return c;
}

ConstraintFamily ConstraintFamily::cardinality_upper(int universe_size, int k) {
  if (universe_size < 0) throw ValidationError("cardinality: negative universe");
  if (k < 0) throw ValidationError("cardinality upper bound: k must be nonnegative");
  ConstraintFamily c;
  c.kind_ = ConstraintKind::CardinalityUpper;
  c.universe_size_ = universe_size;
  c.k_ = std::min(k, universe_size);
  return c;
}

ConstraintFamily ConstraintFamily::knapsacks(int universe_size, std::vector<Knapsack> ks) {
  ConstraintFamily c;
  c.kind_ = ConstraintKind::Knapsacks;
  c.universe_size_ = universe_size;
  for (const auto& k : ks) {
    if (static_cast<int>(k.weights.size()) != universe_size)
      throw ValidationError("knapsack: weight count != universe size");
    for (double w : k.weights)
      if (!(w >= 0.0)) throw ValidationError("knapsack: weights must be nonnegative");
    if (!(k.budget >= 0.0)) throw ValidationError("knapsack: budget must be nonnegative");
  }
  c.knapsacks_ = std::move(ks);
  return c;
}

ConstraintFamily ConstraintFamily::spanning_tree(GraphSpec g) {
  g.mapping = GroundMapping::Edges;
  g.validate(false);
  ConstraintFamily c;
  c.kind_ = ConstraintKind::SpanningTree;
  c.universe_size_ = g.num_edges();
  c.graph_ = std::move(g);
  c.validate_nonempty();
  return c;
}

ConstraintFamily ConstraintFamily::st_path(GraphSpec g) {
  g.mapping = GroundMapping::Edges;
  g.validate(true);
  ConstraintFamily c;
  c.kind_ = ConstraintKind::StPath;
  c.universe_size_ = g.num_edges();
  c.graph_ = std::move(g);
  c.validate_nonempty();
  return c;
}

ConstraintFamily ConstraintFamily::perfect_matching(GraphSpec g) {
  g.mapping = GroundMapping::Edges;
  g.validate(false);
  ConstraintFamily c;
  c.kind_ = ConstraintKind::PerfectMatching;
  c.universe_size_ = g.num_edges();
  c.graph_ = std::move(g);
  c.validate_nonempty();
  return c;
}

ConstraintFamily ConstraintFamily::st_cut(GraphSpec g) {
  g.mapping = GroundMapping::Edges;
  g.validate(true);
  ConstraintFamily c;
  c.kind_ = ConstraintKind::StCut;
  c.universe_size_ = g.num_edges();
  c.graph_ = std::move(g);
  c.validate_nonempty();
  return c;
}

ConstraintFamily ConstraintFamily::vertex_cover(GraphSpec g) {
  g.mapping = GroundMapping::Vertices;
  g.validate(false);
  for (const auto& [u, v] : g.edges)
    if (u == v) throw ValidationError("vertex cover: self-loops not supported");
  ConstraintFamily c;
  c.kind_ = ConstraintKind::VertexCover;
  c.universe_size_ = g.num_nodes;
  c.graph_ = std::move(g);
  return c;
}

void ConstraintFamily::validate_nonempty() const {
  switch (kind_) {
    case ConstraintKind::SpanningTree: {
      if (!spans_all_nodes(graph_, ElementSet::full(graph_.num_edges())))
        throw InfeasibleError("spanning tree: graph is not connected");
      return;
    }
    case ConstraintKind::StPath: {
      if (!st_connected(graph_, ElementSet::full(graph_.num_edges())))
        throw InfeasibleError("s-t path: t unreachable from s");
      return;
    }
    case ConstraintKind::PerfectMatching: {
      const auto sides = bipartition(graph_);
      if (!sides) throw ValidationError("perfect matching: graph is not bipartite");
      if (max_bipartite_matching_size(graph_, ElementSet::full(graph_.num_edges())) * 2 !=
          graph_.num_nodes)
        throw InfeasibleError("perfect matching: no perfect matching exists");
      return;
    }
    default:
      return;
  }
}

double ConstraintFamily::oracle_alpha() const {
  return kind_ == ConstraintKind::VertexCover ? 2.0 : 1.0;
}

ElementSet ConstraintFamily::min_modular(std::span<const double> w,
                                         const ElementSet* allowed) const {
  check_costs(w, universe_size_);
  if (allowed != nullptr && allowed->universe_size() != universe_size_)
    throw ValidationError("min_modular: allowed-set universe mismatch");

  switch (kind_) {
    case ConstraintKind::CardinalityLower: {
      std::vector<int> ids;
      for (int j = 0; j < universe_size_; ++j)
        if (allowed == nullptr || allowed->contains(j)) ids.push_back(j);
      if (static_cast<int>(ids.size()) < k_)
        throw InfeasibleError("cardinality lower bound: not enough allowed elements");
      // k cheapest elements; ties keep the lower id.
      std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return w[static_cast<std::size_t>(a)] < w[static_cast<std::size_t>(b)];
      });
      ElementSet s(universe_size_);
      for (int i = 0; i < k_; ++i) s.add(ids[static_cast<std::size_t>(i)]);
      return s;
    }
    case ConstraintKind::CardinalityUpper:
    case ConstraintKind::Knapsacks:
      // Down-closed families: the empty set is feasible and costs zero.
      return ElementSet(universe_size_);
    case ConstraintKind::SpanningTree:
      return ElementSet::from_ids(universe_size_, minimum_spanning_tree(graph_, w, allowed));
    case ConstraintKind::StPath:
      return ElementSet::from_ids(universe_size_, shortest_st_path(graph_, w, allowed));
    case ConstraintKind::PerfectMatching:
      return ElementSet::from_ids(universe_size_, min_cost_perfect_matching(graph_, w, allowed));
    case ConstraintKind::StCut: {
      // Edges outside the allowed set become uncuttable (infinite capacity);
      // feasibility of `allowed` guarantees a finite cut remains.
      std::vector<double> cap(w.begin(), w.end());
      if (allowed != nullptr) {
        for (int e = 0; e < universe_size_; ++e)
          if (!allowed->contains(e)) cap[static_cast<std::size_t>(e)] = kBig;
      }
      auto res = min_st_cut(graph_, cap);
      if (res.value >= kBig / 2)
        throw InfeasibleError("s-t cut: no cut available within the allowed edges");
      return ElementSet::from_ids(universe_size_, res.cut_edges);
    }
    case ConstraintKind::VertexCover: {
      // Local-ratio 2-approximation: pay each edge from the residual cost of
      // its endpoints; zero-residual vertices form the cover. Vertices
      // outside the allowed set get unpayable residuals.
      std::vector<double> residual(w.begin(), w.end());
      if (allowed != nullptr) {
        for (int v = 0; v < universe_size_; ++v)
          if (!allowed->contains(v)) residual[static_cast<std::size_t>(v)] = kBig;
      }
      for (const auto& [u, v] : graph_.edges) {
        const double pay = std::min(residual[static_cast<std::size_t>(u)],
                                    residual[static_cast<std::size_t>(v)]);
        residual[static_cast<std::size_t>(u)] -= pay;
        residual[static_cast<std::size_t>(v)] -= pay;
      }
      ElementSet s(universe_size_);
      for (int v = 0; v < universe_size_; ++v)
        if (residual[static_cast<std::size_t>(v)] <= 1e-12 &&
            (allowed == nullptr || allowed->contains(v)))
          s.add(v);
      if (!is_feasible(s))
        throw InfeasibleError("vertex cover: no cover available within the allowed vertices");
      return s;
    }
  }
  throw Error("unreachable constraint kind");
}

bool ConstraintFamily::is_feasible(const ElementSet& s) const {
  if (s.universe_size() != universe_size_)
    throw ValidationError("is_feasible: set universe mismatch");
  switch (kind_) {
    case ConstraintKind::CardinalityLower:
      return s.size() >= k_;
    case ConstraintKind::CardinalityUpper:
      return s.size() <= k_;
    case ConstraintKind::Knapsacks: {
      for (const auto& ks : knapsacks_)
        if (knapsack_load(ks, s) > ks.budget + 1e-9) return false;
      return true;
    }
    case ConstraintKind::SpanningTree:
      return is_spanning_tree(graph_, s);
    case ConstraintKind::StPath:
      return is_simple_st_path(graph_, s);
    case ConstraintKind::PerfectMatching:
      return is_perfect_matching(graph_, s);
    case ConstraintKind::StCut:
      return !st_connected(graph_, s.complement());
    case ConstraintKind::VertexCover: {
      for (const auto& [u, v] : graph_.edges)
        if (!s.contains(u) && !s.contains(v)) return false;
      return true;
    }
  }
  throw Error("unreachable constraint kind");
}

bool ConstraintFamily::contains_feasible_subset(const ElementSet& s) const {
  if (s.universe_size() != universe_size_)
    throw ValidationError("contains_feasible_subset: set universe mismatch");
  switch (kind_) {
    case ConstraintKind::CardinalityLower:
      return s.size() >= k_;
    case ConstraintKind::CardinalityUpper:
    case ConstraintKind::Knapsacks:
      return true;  // down-closed: the empty set qualifies
    case ConstraintKind::SpanningTree:
      return spans_all_nodes(graph_, s);
    case ConstraintKind::StPath:
      return st_connected(graph_, s);
    case ConstraintKind::PerfectMatching:
      return max_bipartite_matching_size(graph_, s) * 2 == graph_.num_nodes;
    case ConstraintKind::StCut:
    case ConstraintKind::VertexCover:
      // Up-closed families coincide with their up-closure.
      return is_feasible(s);
  }
  throw Error("unreachable constraint kind");
}

CoveringFamily ConstraintFamily::covering_polytope() const {
  if (user_covering_) return *user_covering_;
  switch (kind_) {
    case ConstraintKind::VertexCover: {
      std::vector<CoveringConstraint> cs;
      cs.reserve(graph_.edges.size());
      for (const auto& [u, v] : graph_.edges) cs.push_back({{u, v}, 1});
      return CoveringFamily(universe_size_, std::move(cs));
    }
    case ConstraintKind::CardinalityLower: {
      if (k_ == 0) return CoveringFamily(universe_size_, {});
      std::vector<ElementId> all(static_cast<std::size_t>(universe_size_));
      std::iota(all.begin(), all.end(), 0);
      return CoveringFamily(universe_size_, {{std::move(all), k_}});
    }
    default:
      throw UnsupportedError(
          "covering_polytope: no built-in covering description for this family; "
          "supply one with set_covering_family");
  }
}

void ConstraintFamily::set_covering_family(CoveringFamily family) {
  if (family.universe_size() != universe_size_)
    throw ValidationError("set_covering_family: universe mismatch");
  user_covering_ = std::move(family);
}

bool ConstraintFamily::has_covering_family() const {
  if (user_covering_) return true;
  return kind_ == ConstraintKind::VertexCover || kind_ == ConstraintKind::CardinalityLower;
}

}  // namespace robsub
