#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/rng.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/types.hpp"

namespace robsub {

// P1: minimize max_i f_i over a constraint family.
// P2: maximize min_i g_i under a cardinality or knapsack budget.
// P3: minimize max_i f_i subject to g_i >= targets[i].
// P4: maximize min_i g_i subject to f_i <= budgets[i].
enum class ProblemTag { P1, P2, P3, P4 };

struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::CardinalityLower;
  int k = 0;                       // cardinality kinds
  std::vector<Knapsack> knapsacks; // Knapsacks kind
  GraphSpec graph;                 // graph-backed kinds
};

// Modular certificate attached to objective `index`: sqrt(weights(X)) must
// lower-bound that function everywhere.
struct CertificateSpec {
  int index = 0;
  std::vector<double> weights;
  bool exact = false;
};

// Serializable problem description; the JSON document mirrors these fields
// one-to-one, carries a schema_version, and names the RNG algorithm so
// instances regenerate identically elsewhere.
struct ProblemInstance {
  int schema_version = 1;
  std::string rng = Rng::kAlgorithm;
  ProblemTag problem = ProblemTag::P1;
  GroundSet ground;
  std::vector<FunctionSpec> f_specs;
  std::vector<FunctionSpec> g_specs;
  std::optional<ConstraintSpec> constraint;        // P1 and P2
  std::vector<double> budgets;                     // P4
  std::vector<double> targets;                     // P3
  std::vector<CertificateSpec> certificates;       // optional, enables ea
  std::vector<CoveringConstraint> covering;        // optional, enables cr
  double eps = 0.1;
  std::uint64_t seed = 0;
};

// Evaluable form of an instance: built handles, the constraint family for
// P1/P2, the covering polytope when one applies, and validated certificates.
struct BuiltInstance {
  ProblemInstance source;
  std::vector<SetFunctionHandle> fs;
  std::vector<SetFunctionHandle> gs;
  std::optional<ConstraintFamily> family;
  std::optional<CoveringFamily> polytope;
  std::vector<EACertificate> certs;

  bool has_certs_for_all_f() const {
    return !fs.empty() && certs.size() == fs.size();
  }
};

BuiltInstance build_instance(const ProblemInstance& inst);

// Parse/serialize as UTF-8 JSON. Parsing is strict: unknown problem tags,
// families, or mismatched dimensions throw ValidationError naming the field;
// serialize(parse(x)) reproduces the same JSON value.
ProblemInstance parse_instance(const std::string& json_text);
std::string serialize_instance(const ProblemInstance& inst);
ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& inst, const std::string& path);

}  // namespace robsub
