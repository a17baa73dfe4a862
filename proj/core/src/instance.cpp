#include "robsub/instance.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace robsub {

namespace {

using nlohmann::json;

std::string tag_name(ProblemTag t) {
  switch (t) {
    case ProblemTag::P1: return "P1";
    case ProblemTag::P2: return "P2";
    case ProblemTag::P3: return "P3";
    case ProblemTag::P4: return "P4";
  }
  throw ValidationError("problem: unknown tag");
}

ProblemTag tag_from(const std::string& s) {
  if (s == "P1") return ProblemTag::P1;
  if (s == "P2") return ProblemTag::P2;
  if (s == "P3") return ProblemTag::P3;
  if (s == "P4") return ProblemTag::P4;
  throw ValidationError("problem: expected one of P1..P4, got '" + s + "'");
}

std::string family_name(FunctionSpec::Family f) {
  switch (f) {
    case FunctionSpec::Family::Modular: return "modular";
    case FunctionSpec::Family::ClusteredSqrt: return "clustered_sqrt";
    case FunctionSpec::Family::FacilityLocation: return "facility_location";
    case FunctionSpec::Family::FeatureBased: return "feature_based";
    case FunctionSpec::Family::Coverage: return "coverage";
    case FunctionSpec::Family::Truncation: return "truncation";
    case FunctionSpec::Family::WeightedSum: return "weighted_sum";
  }
  throw ValidationError("family: unknown");
}

FunctionSpec::Family family_from(const std::string& s) {
  if (s == "modular") return FunctionSpec::Family::Modular;
  if (s == "clustered_sqrt") return FunctionSpec::Family::ClusteredSqrt;
  if (s == "facility_location") return FunctionSpec::Family::FacilityLocation;
  if (s == "feature_based") return FunctionSpec::Family::FeatureBased;
  if (s == "coverage") return FunctionSpec::Family::Coverage;
  if (s == "truncation") return FunctionSpec::Family::Truncation;
  if (s == "weighted_sum") return FunctionSpec::Family::WeightedSum;
  throw ValidationError("family: unknown '" + s + "'");
}

std::string kind_name(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::CardinalityLower: return "cardinality_lower";
    case ConstraintKind::CardinalityUpper: return "cardinality_upper";
    case ConstraintKind::Knapsacks: return "knapsacks";
    case ConstraintKind::SpanningTree: return "spanning_tree";
    case ConstraintKind::StPath: return "st_path";
    case ConstraintKind::PerfectMatching: return "perfect_matching";
    case ConstraintKind::StCut: return "st_cut";
    case ConstraintKind::VertexCover: return "vertex_cover";
  }
  throw ValidationError("constraint.kind: unknown");
}

ConstraintKind kind_from(const std::string& s) {
  if (s == "cardinality_lower") return ConstraintKind::CardinalityLower;
  if (s == "cardinality_upper") return ConstraintKind::CardinalityUpper;
  if (s == "knapsacks") return ConstraintKind::Knapsacks;
  if (s == "spanning_tree") return ConstraintKind::SpanningTree;
  if (s == "st_path") return ConstraintKind::StPath;
  if (s == "perfect_matching") return ConstraintKind::PerfectMatching;
  if (s == "st_cut") return ConstraintKind::StCut;
  if (s == "vertex_cover") return ConstraintKind::VertexCover;
  throw ValidationError("constraint.kind: unknown '" + s + "'");
}

json spec_to_json(const FunctionSpec& s) {
  json j;
  j["family"] = family_name(s.family);
  switch (s.family) {
    case FunctionSpec::Family::Modular:
      j["weights"] = s.weights;
      break;
    case FunctionSpec::Family::ClusteredSqrt:
      j["weights"] = s.weights;
      j["clusters"] = s.clusters;
      break;
    case FunctionSpec::Family::FacilityLocation:
      j["similarity"] = s.similarity;
      break;
    case FunctionSpec::Family::FeatureBased:
      j["features"] = s.features;
      j["concave"] = s.concave == ConcaveKind::Sqrt ? "sqrt" : "log1p";
      break;
    case FunctionSpec::Family::Coverage:
      j["cover_map"] = s.cover_map;
      j["item_weights"] = s.item_weights;
      break;
    case FunctionSpec::Family::Truncation:
      j["inner"] = json::array({spec_to_json(s.inner.at(0))});
      j["cap"] = s.cap;
      break;
    case FunctionSpec::Family::WeightedSum: {
      json inner = json::array();
      for (const auto& t : s.inner) inner.push_back(spec_to_json(t));
      j["inner"] = inner;
      j["coefficients"] = s.coefficients;
      break;
    }
  }
  return j;
}

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name))
    throw ValidationError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + name + "' has the wrong type");
  }
}

FunctionSpec spec_from_json(const json& j) {
  FunctionSpec s;
  s.family = family_from(field<std::string>(j, "family"));
  switch (s.family) {
    case FunctionSpec::Family::Modular:
      s.weights = field<std::vector<double>>(j, "weights");
      break;
    case FunctionSpec::Family::ClusteredSqrt:
      s.weights = field<std::vector<double>>(j, "weights");
      s.clusters = field<std::vector<std::vector<ElementId>>>(j, "clusters");
      break;
    case FunctionSpec::Family::FacilityLocation:
      s.similarity = field<std::vector<std::vector<double>>>(j, "similarity");
      break;
    case FunctionSpec::Family::FeatureBased: {
      s.features = field<std::vector<std::vector<double>>>(j, "features");
      const std::string kind = field<std::string>(j, "concave");
      if (kind == "sqrt")
        s.concave = ConcaveKind::Sqrt;
      else if (kind == "log1p")
        s.concave = ConcaveKind::Log1p;
      else
        throw ValidationError("concave: expected 'sqrt' or 'log1p', got '" + kind + "'");
      break;
    }
    case FunctionSpec::Family::Coverage:
      s.cover_map = field<std::vector<std::vector<int>>>(j, "cover_map");
      s.item_weights = field<std::vector<double>>(j, "item_weights");
      break;
    case FunctionSpec::Family::Truncation: {
      const json inner = field<json>(j, "inner");
      if (!inner.is_array() || inner.size() != 1)
        throw ValidationError("truncation.inner: expected exactly one entry");
      s.inner.push_back(spec_from_json(inner.at(0)));
      s.cap = field<double>(j, "cap");
      break;
    }
    case FunctionSpec::Family::WeightedSum: {
      const json inner = field<json>(j, "inner");
      if (!inner.is_array() || inner.empty())
        throw ValidationError("weighted_sum.inner: expected a nonempty array");
      for (const auto& t : inner) s.inner.push_back(spec_from_json(t));
      s.coefficients = field<std::vector<double>>(j, "coefficients");
      break;
    }
  }
  return s;
}

json graph_to_json(const GraphSpec& g) {
  json j;
  j["num_nodes"] = g.num_nodes;
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  j["edges"] = edges;
  j["directed"] = g.directed;
  j["s"] = g.s;
  j["t"] = g.t;
  j["mapping"] = g.mapping == GroundMapping::Edges ? "edges" : "vertices";
  return j;
}

GraphSpec graph_from_json(const json& j) {
  GraphSpec g;
  g.num_nodes = field<int>(j, "num_nodes");
  const json edges = field<json>(j, "edges");
  if (!edges.is_array()) throw ValidationError("graph.edges: expected an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2)
      throw ValidationError("graph.edges: each edge is a [u, v] pair");
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  g.directed = j.value("directed", false);
  g.s = j.value("s", -1);
  g.t = j.value("t", -1);
  const std::string mapping = j.value("mapping", std::string("edges"));
  if (mapping == "edges")
    g.mapping = GroundMapping::Edges;
  else if (mapping == "vertices")
    g.mapping = GroundMapping::Vertices;
  else
    throw ValidationError("graph.mapping: expected 'edges' or 'vertices'");
  return g;
}

json constraint_to_json(const ConstraintSpec& c) {
  json j;
  j["kind"] = kind_name(c.kind);
  switch (c.kind) {
    case ConstraintKind::CardinalityLower:
    case ConstraintKind::CardinalityUpper:
      j["k"] = c.k;
      break;
    case ConstraintKind::Knapsacks: {
      json ks = json::array();
      for (const auto& k : c.knapsacks)
        ks.push_back(json{{"weights", k.weights}, {"budget", k.budget}});
      j["knapsacks"] = ks;
      break;
    }
    default:
      j["graph"] = graph_to_json(c.graph);
      break;
  }
  return j;
}

ConstraintSpec constraint_from_json(const json& j) {
  ConstraintSpec c;
  c.kind = kind_from(field<std::string>(j, "kind"));
  switch (c.kind) {
    case ConstraintKind::CardinalityLower:
    case ConstraintKind::CardinalityUpper:
      c.k = field<int>(j, "k");
      break;
    case ConstraintKind::Knapsacks: {
      const json ks = field<json>(j, "knapsacks");
      if (!ks.is_array() || ks.empty())
        throw ValidationError("constraint.knapsacks: expected a nonempty array");
      for (const auto& k : ks)
        c.knapsacks.push_back({field<std::vector<double>>(k, "weights"), field<double>(k, "budget")});
      break;
    }
    default:
      c.graph = graph_from_json(field<json>(j, "graph"));
      break;
  }
  return c;
}

ConstraintFamily family_from_spec(const ConstraintSpec& c, int n) {
  switch (c.kind) {
    case ConstraintKind::CardinalityLower:
      return ConstraintFamily::cardinality_lower(n, c.k);
    case ConstraintKind::CardinalityUpper:
      return ConstraintFamily::cardinality_upper(n, c.k);
    case ConstraintKind::Knapsacks: {
      for (const auto& k : c.knapsacks)
        if (static_cast<int>(k.weights.size()) != n)
          throw ValidationError("constraint.knapsacks: weight size mismatch");
      return ConstraintFamily::knapsacks(n, c.knapsacks);
    }
    case ConstraintKind::SpanningTree:
      return ConstraintFamily::spanning_tree(c.graph);
    case ConstraintKind::StPath:
      return ConstraintFamily::st_path(c.graph);
    case ConstraintKind::PerfectMatching:
      return ConstraintFamily::perfect_matching(c.graph);
    case ConstraintKind::StCut:
      return ConstraintFamily::st_cut(c.graph);
    case ConstraintKind::VertexCover:
      return ConstraintFamily::vertex_cover(c.graph);
  }
  throw ValidationError("constraint.kind: unknown");
}

}  // namespace

BuiltInstance build_instance(const ProblemInstance& inst) {
  BuiltInstance built;
  built.source = inst;
  inst.ground.validate();
  const int n = inst.ground.n;

  for (const auto& s : inst.f_specs) built.fs.push_back(build_function(s, inst.ground));
  for (const auto& s : inst.g_specs) built.gs.push_back(build_function(s, inst.ground));

  switch (inst.problem) {
    case ProblemTag::P1:
      if (built.fs.empty()) throw ValidationError("f: P1 needs at least one objective");
      if (!inst.constraint) throw ValidationError("constraint: P1 needs a constraint family");
      break;
    case ProblemTag::P2:
      if (built.gs.empty()) throw ValidationError("g: P2 needs at least one objective");
      if (!inst.constraint) throw ValidationError("constraint: P2 needs a budget constraint");
      if (inst.constraint->kind != ConstraintKind::CardinalityUpper &&
          inst.constraint->kind != ConstraintKind::Knapsacks)
        throw ValidationError("constraint: P2 supports cardinality_upper or knapsacks");
      break;
    case ProblemTag::P3:
      if (built.fs.empty() || built.gs.empty())
        throw ValidationError("f/g: P3 needs objectives and covering functions");
      if (inst.targets.size() != built.gs.size())
        throw ValidationError("targets: one per covering function required");
      break;
    case ProblemTag::P4:
      if (built.fs.empty() || built.gs.empty())
        throw ValidationError("f/g: P4 needs constraint and objective functions");
      if (inst.budgets.size() != built.fs.size())
        throw ValidationError("budgets: one per constrained function required");
      break;
  }

  if (inst.constraint) built.family = family_from_spec(*inst.constraint, n);

  if (!inst.covering.empty()) {
    built.polytope = CoveringFamily(n, inst.covering);
  } else if (built.family && built.family->has_covering_family()) {
    built.polytope = built.family->covering_polytope();
  }

  if (!inst.certificates.empty()) {
    if (inst.certificates.size() != built.fs.size())
      throw ValidationError("certificates: provide one per f or none");
    std::vector<EACertificate> certs(built.fs.size());
    std::vector<bool> filled(built.fs.size(), false);
    for (const auto& c : inst.certificates) {
      if (c.index < 0 || c.index >= static_cast<int>(built.fs.size()))
        throw ValidationError("certificates.index: out of range");
      if (filled[c.index]) throw ValidationError("certificates.index: duplicate entry");
      filled[c.index] = true;
      certs[c.index] = make_ea_certificate(built.fs[c.index], c.weights, c.exact,
                                           inst.seed ^ 0x9e3779b97f4a7c15ULL);
    }
    built.certs = std::move(certs);
  }

  return built;
}

ProblemInstance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("instance: invalid JSON: ") + e.what());
  }
  ProblemInstance inst;
  inst.schema_version = field<int>(j, "schema_version");
  if (inst.schema_version != 1)
    throw ValidationError("schema_version: only version 1 is understood");
  inst.rng = j.value("rng", std::string(Rng::kAlgorithm));
  if (inst.rng != Rng::kAlgorithm)
    throw ValidationError("rng: unknown generator '" + inst.rng + "'");
  inst.problem = tag_from(field<std::string>(j, "problem"));

  const json ground = field<json>(j, "ground");
  inst.ground.n = field<int>(ground, "n");
  if (ground.contains("labels"))
    inst.ground.labels = field<std::vector<std::string>>(ground, "labels");

  if (j.contains("f"))
    for (const auto& s : j.at("f")) inst.f_specs.push_back(spec_from_json(s));
  if (j.contains("g"))
    for (const auto& s : j.at("g")) inst.g_specs.push_back(spec_from_json(s));
  if (j.contains("constraint")) inst.constraint = constraint_from_json(j.at("constraint"));
  if (j.contains("budgets")) inst.budgets = field<std::vector<double>>(j, "budgets");
  if (j.contains("targets")) inst.targets = field<std::vector<double>>(j, "targets");
  if (j.contains("certificates")) {
    for (const auto& c : j.at("certificates")) {
      CertificateSpec cs;
      cs.index = field<int>(c, "index");
      cs.weights = field<std::vector<double>>(c, "weights");
      cs.exact = c.value("exact", false);
      inst.certificates.push_back(std::move(cs));
    }
  }
  if (j.contains("covering")) {
    for (const auto& c : j.at("covering")) {
      CoveringConstraint cc;
      cc.elements = field<std::vector<ElementId>>(c, "elements");
      cc.bound = field<int>(c, "bound");
      inst.covering.push_back(std::move(cc));
    }
  }
  inst.eps = j.value("eps", 0.1);
  inst.seed = j.value("seed", std::uint64_t{0});
  return inst;
}

std::string serialize_instance(const ProblemInstance& inst) {
  json j;
  j["schema_version"] = inst.schema_version;
  j["rng"] = inst.rng;
  j["problem"] = tag_name(inst.problem);
  json ground;
  ground["n"] = inst.ground.n;
  if (!inst.ground.labels.empty()) ground["labels"] = inst.ground.labels;
  j["ground"] = ground;
  if (!inst.f_specs.empty()) {
    json fs = json::array();
    for (const auto& s : inst.f_specs) fs.push_back(spec_to_json(s));
    j["f"] = fs;
  }
  if (!inst.g_specs.empty()) {
    json gs = json::array();
    for (const auto& s : inst.g_specs) gs.push_back(spec_to_json(s));
    j["g"] = gs;
  }
  if (inst.constraint) j["constraint"] = constraint_to_json(*inst.constraint);
  if (!inst.budgets.empty()) j["budgets"] = inst.budgets;
  if (!inst.targets.empty()) j["targets"] = inst.targets;
  if (!inst.certificates.empty()) {
    json cs = json::array();
    for (const auto& c : inst.certificates)
      cs.push_back(json{{"index", c.index}, {"weights", c.weights}, {"exact", c.exact}});
    j["certificates"] = cs;
  }
  if (!inst.covering.empty()) {
    json cov = json::array();
    for (const auto& c : inst.covering)
      cov.push_back(json{{"elements", c.elements}, {"bound", c.bound}});
    j["covering"] = cov;
  }
  j["eps"] = inst.eps;
  j["seed"] = inst.seed;
  return j.dump(2) + "\n";
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("instance: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("instance: cannot write '" + path + "'");
  out << serialize_instance(inst);
}

}  // namespace robsub
