#pragma once

#include <optional>
#include <span>
#include <vector>

#include "robsub/graph.hpp"
#include "robsub/types.hpp"

namespace robsub {

// One knapsack: sum_{j in S} weights[j] <= budget.
struct Knapsack {
  std::vector<double> weights;
  double budget = 0.0;
};

// One covering constraint sum_{j in W} x_j >= bound with integer
// 1 <= bound <= |W|.
struct CoveringConstraint {
  std::vector<ElementId> elements;
  int bound = 1;
};

// Intersection of covering constraints with the unit box; describes the
// up-closed relaxation a continuous solver optimizes over.
class CoveringFamily {
 public:
  CoveringFamily() = default;
  CoveringFamily(int universe_size, std::vector<CoveringConstraint> constraints);

  int universe_size() const { return universe_size_; }
  const std::vector<CoveringConstraint>& constraints() const { return constraints_; }

  // Worst-case rounding blowup: max over constraints of |W| - bound + 1.
  double rounding_factor() const;
  bool satisfied(const ElementSet& s) const;
  bool satisfied(std::span<const double> x, double tol) const;

 private:
  int universe_size_ = 0;
  std::vector<CoveringConstraint> constraints_;
};

enum class ConstraintKind {
  CardinalityLower,  // |S| >= k
  CardinalityUpper,  // |S| <= k
  Knapsacks,         // w_i(S) <= b_i for every i
  SpanningTree,      // S is a spanning tree (ground set = edges)
  StPath,            // S is a simple s-t path (ground set = edges)
  PerfectMatching,   // S is a perfect matching (bipartite, ground set = edges)
  StCut,             // removing S disconnects s from t (ground set = edges)
  VertexCover        // S covers every edge (ground set = vertices)
};

// A feasible family over subsets of the ground set, with three oracles:
// minimum-weight feasible set under nonnegative modular costs, exact
// membership, and membership of the up-closure. Construction validates that
// the feasible region is nonempty.
class ConstraintFamily {
 public:
  static ConstraintFamily cardinality_lower(int universe_size, int k);
  static ConstraintFamily cardinality_upper(int universe_size, int k);
  static ConstraintFamily knapsacks(int universe_size, std::vector<Knapsack> ks);
  static ConstraintFamily spanning_tree(GraphSpec g);
  static ConstraintFamily st_path(GraphSpec g);
  static ConstraintFamily perfect_matching(GraphSpec g);
  static ConstraintFamily st_cut(GraphSpec g);
  static ConstraintFamily vertex_cover(GraphSpec g);

  ConstraintKind kind() const { return kind_; }
  int universe_size() const { return universe_size_; }
  int cardinality_bound() const { return k_; }
  const std::vector<Knapsack>& knapsack_list() const { return knapsacks_; }
  const GraphSpec& graph() const { return graph_; }

  // Approximation factor of min_modular: 1 everywhere except the declared
  // 2-approximation for vertex cover.
  double oracle_alpha() const;

  // Minimum-weight feasible set under nonnegative per-element costs.
  // `allowed`, when given, restricts the search to subsets of that set
  // (throws InfeasibleError when no feasible subset exists inside it).
  ElementSet min_modular(std::span<const double> w,
                         const ElementSet* allowed = nullptr) const;

  bool is_feasible(const ElementSet& s) const;
  // True iff some subset of s is feasible (membership of the up-closure).
  bool contains_feasible_subset(const ElementSet& s) const;

  // Covering description used by the continuous-relaxation solver. Built in
  // for VertexCover (one constraint per edge) and CardinalityLower (a single
  // ground-set constraint); other kinds require a user-supplied family via
  // set_covering_family and throw UnsupportedError otherwise.
  CoveringFamily covering_polytope() const;
  void set_covering_family(CoveringFamily family);
  bool has_covering_family() const;

 private:
  ConstraintFamily() = default;
  void validate_nonempty() const;

  ConstraintKind kind_ = ConstraintKind::CardinalityLower;
  int universe_size_ = 0;
  int k_ = 0;
  std::vector<Knapsack> knapsacks_;
  GraphSpec graph_;
  std::optional<CoveringFamily> user_covering_;
};

}  // namespace robsub
