#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robsub/audit.hpp"
#include "robsub/experiment.hpp"
#include "robsub/instance.hpp"
#include "robsub/oracle.hpp"
#include "robsub/robust_max.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/scsc_scsk.hpp"

namespace {

using namespace robsub;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitAuditFail = 3;

struct ResultRecord {
  std::string problem;
  std::string method;
  ElementSet set;
  double objective = 0.0;
  std::vector<double> f_values;
  std::vector<double> g_values;
  double sigma = 1.0;
  double rho = 1.0;
  int iterations = 0;
  long long wall_ms = 0;
};

std::string join_ids(const ElementSet& s) {
  std::ostringstream out;
  bool first = true;
  for (ElementId j : s.ids()) {
    if (!first) out << ' ';
    out << j;
    first = false;
  }
  return out.str();
}

std::string join_values(const std::vector<double>& v) {
  std::ostringstream out;
  char buf[64];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ';';
    std::snprintf(buf, sizeof(buf), "%.12g", v[i]);
    out << buf;
  }
  return out.str();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string record_csv(const ResultRecord& r) {
  std::ostringstream out;
  out << "problem,method,set,objective,f_values,g_values,sigma,rho,iterations,wall_ms\r\n";
  out << r.problem << ',' << r.method << ",\"" << join_ids(r.set) << "\"," << fmt(r.objective)
      << ",\"" << join_values(r.f_values) << "\",\"" << join_values(r.g_values) << "\","
      << fmt(r.sigma) << ',' << fmt(r.rho) << ',' << r.iterations << ',' << r.wall_ms << "\r\n";
  return out.str();
}

void print_summary(const ResultRecord& r) {
  std::cerr << "problem:    " << r.problem << "\n"
            << "method:     " << r.method << "\n"
            << "set:        {" << join_ids(r.set) << "} (" << r.set.size() << " elements)\n"
            << "objective:  " << fmt(r.objective) << "\n";
  if (!r.f_values.empty()) std::cerr << "f values:   " << join_values(r.f_values) << "\n";
  if (!r.g_values.empty()) std::cerr << "g values:   " << join_values(r.g_values) << "\n";
  std::cerr << "sigma:      " << fmt(r.sigma) << "\n"
            << "rho:        " << fmt(r.rho) << "\n"
            << "iterations: " << r.iterations << "\n"
            << "wall ms:    " << r.wall_ms << "\n";
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + out_path + "'");
  out << text;
}

ResultRecord solve_p1(const BuiltInstance& inst, const std::string& method) {
  ResultRecord r;
  r.problem = "P1";
  RobustSolution sol;
  if (method == "mmin" || method == "auto") {
    sol = mmin_robust_submin(inst.fs, *inst.family);
  } else if (method == "aa") {
    sol = aa_submin(inst.fs, *inst.family);
  } else if (method == "cr") {
    if (!inst.polytope)
      throw ValidationError("cr needs a covering family (built in or provided)");
    sol = cr_submin(inst.fs, *inst.polytope, *inst.family);
  } else if (method == "ea") {
    if (!inst.has_certs_for_all_f())
      throw ValidationError("ea needs a certificate for every objective");
    sol = ea_submin(inst.certs, *inst.family);
  } else {
    throw ValidationError("P1 methods: mmin, aa, cr, ea");
  }
  r.method = sol.method;
  r.set = sol.set;
  r.objective = sol.worst_value;
  r.f_values = sol.per_function;
  r.iterations = static_cast<int>(sol.trace.size());
  return r;
}

ResultRecord solve_p2(const BuiltInstance& inst, const std::string& method, double eps) {
  ResultRecord r;
  r.problem = "P2";
  const auto kind = inst.family->kind();
  if (kind == ConstraintKind::CardinalityUpper) {
    if (method != "auto" && method != "saturate")
      throw ValidationError("P2 with a cardinality budget supports method saturate");
    SaturateResult sat =
        saturate_robust_max(inst.gs, inst.family->cardinality_bound(), eps);
    r.method = "saturate";
    r.set = sat.set;
    r.objective = sat.worst_value;
    r.g_values = sat.per_function;
    r.iterations = sat.bisections;
    return r;
  }
  KnapsackReduction red = KnapsackReduction::Both;
  if (method == "modmax")
    red = KnapsackReduction::ModMax;
  else if (method == "avg")
    red = KnapsackReduction::Avg;
  else if (method != "auto" && method != "both")
    throw ValidationError("P2 with knapsacks supports methods modmax, avg, both");
  MultiKnapsackResult mk =
      multiknapsack_robust_max(inst.gs, inst.family->knapsack_list(), eps, red);
  r.method = mk.reduction_used == KnapsackReduction::ModMax ? "modmax" : "avg";
  r.set = mk.set;
  r.objective = mk.worst_value;
  r.sigma = mk.violation.max_ratio;
  r.iterations = mk.bisections;
  std::cerr << "violation: max_i w_i/b_i = " << fmt(mk.violation.max_ratio)
            << " (declared ceiling " << fmt(mk.violation.allowed) << ")\n";
  return r;
}

ScMethod parse_sc_method(const std::string& method, ScMethod fallback) {
  if (method == "auto") return fallback;
  if (method == "mmin") return ScMethod::MMin;
  if (method == "aa") return ScMethod::AA;
  if (method == "ea") return ScMethod::EA;
  throw ValidationError("methods here: mmin, aa, ea");
}

ResultRecord from_bicriteria(const char* problem, const BicriteriaSolution& sol) {
  ResultRecord r;
  r.problem = problem;
  r.method = sol.method;
  r.set = sol.set;
  r.objective = sol.objective;
  r.f_values = sol.f_values;
  r.g_values = sol.g_values;
  r.sigma = sol.sigma;
  r.rho = sol.rho;
  r.iterations = sol.inner_calls;
  return r;
}

ResultRecord solve_p3(const BuiltInstance& inst, const std::string& method, double eps) {
  const ScMethod m = parse_sc_method(method, ScMethod::AA);
  if (m == ScMethod::EA && !inst.has_certs_for_all_f())
    throw ValidationError("ea needs a certificate for every objective");
  BicriteriaSolution sol =
      robust_scsc(inst.fs, inst.gs, inst.source.targets, m, eps, inst.certs);
  return from_bicriteria("P3", sol);
}

ResultRecord solve_p4(const BuiltInstance& inst, const std::string& method, double eps) {
  const ScMethod m = parse_sc_method(method, ScMethod::MMin);
  if (m == ScMethod::EA && !inst.has_certs_for_all_f())
    throw ValidationError("ea needs a certificate for every objective");
  BicriteriaSolution sol =
      robust_scsk(inst.fs, inst.gs, inst.source.budgets, m, eps, inst.certs);
  return from_bicriteria("P4", sol);
}

int run_solve(const std::string& path, const std::string& method, double eps_override,
              std::uint64_t seed_override, bool has_seed, const std::string& out_path,
              bool timing) {
  ProblemInstance inst = load_instance(path);
  if (eps_override > 0.0) inst.eps = eps_override;
  if (has_seed) inst.seed = seed_override;
  BuiltInstance built = build_instance(inst);

  const auto start = std::chrono::steady_clock::now();
  ResultRecord r;
  switch (inst.problem) {
    case ProblemTag::P1: r = solve_p1(built, method); break;
    case ProblemTag::P2: r = solve_p2(built, method, inst.eps); break;
    case ProblemTag::P3: r = solve_p3(built, method, inst.eps); break;
    case ProblemTag::P4: r = solve_p4(built, method, inst.eps); break;
  }
  const auto stop = std::chrono::steady_clock::now();
  r.wall_ms = timing
                  ? std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()
                  : 0;
  print_summary(r);
  write_output(record_csv(r), out_path);
  return kExitOk;
}

int run_audit_cmd(const std::string& path, double eps_override, const std::string& out_path,
                  std::int64_t oracle_budget) {
  ProblemInstance inst = load_instance(path);
  if (eps_override > 0.0) inst.eps = eps_override;
  BuiltInstance built = build_instance(inst);
  OracleBudget budget;
  if (oracle_budget > 0) budget.max_sets = oracle_budget;
  AuditReport report = run_audit(built, budget);
  write_output(format_report(report), out_path);
  if (report.skipped) return kExitOk;
  return report.all_pass ? kExitOk : kExitAuditFail;
}

int run_validate(const std::string& path) {
  ProblemInstance inst = load_instance(path);
  BuiltInstance built = build_instance(inst);
  const std::string text = serialize_instance(inst);
  ProblemInstance reparsed = parse_instance(text);
  if (serialize_instance(reparsed) != text)
    throw ValidationError("round trip changed the document");
  std::cout << "valid: n=" << inst.ground.n << " f=" << built.fs.size()
            << " g=" << built.gs.size() << "\n";
  return kExitOk;
}

int run_experiment(const std::string& kind, const SyntheticParams& params,
                   const std::string& out_path) {
  if (kind != "synthetic") throw ValidationError("experiment kinds: synthetic");
  ExperimentResult result = run_synthetic(params);
  for (const auto& note : result.header_notes) std::cerr << "# " << note << "\n";
  if (auto warn = soft_trend_warning(result)) std::cerr << "warning: " << *warn << "\n";
  write_output(to_csv(result), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust submodular optimization toolkit"};
  app.require_subcommand(1);

  std::string path;
  std::string method = "auto";
  std::string out_path;
  double eps = 0.0;
  std::uint64_t seed = 0;
  bool timing = false;
  std::int64_t oracle_budget = 0;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("path", path, "instance JSON file")->required();
  solve->add_option("--method", method, "solver method (default per problem)");
  solve->add_option("--eps", eps, "override the instance eps");
  auto* seed_opt = solve->add_option("--seed", seed, "override the instance seed");
  solve->add_option("--out", out_path, "write the CSV record here instead of stdout");
  solve->add_flag("--timing", timing, "report real wall time (off: 0 for reproducibility)");

  auto* audit = app.add_subcommand("audit", "compare solver ratios against the oracle");
  audit->add_option("path", path, "instance JSON file")->required();
  audit->add_option("--eps", eps, "override the instance eps");
  audit->add_option("--out", out_path, "write the report here instead of stdout");
  audit->add_option("--oracle-budget", oracle_budget, "max enumerated sets")
      ->envname("ROBSUB_ORACLE_BUDGET");

  auto* experiment = app.add_subcommand("experiment", "run a built-in experiment");
  std::string kind;
  SyntheticParams params;
  experiment->add_option("kind", kind, "experiment kind (synthetic)")->required();
  experiment->add_option("--n", params.n, "ground set size");
  experiment->add_option("--l", params.l, "number of objectives");
  experiment->add_option("--k", params.k, "cardinality bound");
  experiment->add_option("--runs", params.runs, "number of seeded runs");
  experiment->add_option("--seed", params.seed, "master seed");
  experiment->add_option("--clusters", params.clusters, "clusters per objective");
  experiment->add_flag("--timing", params.timing, "report real wall time per row");
  experiment->add_option("--out", out_path, "write the CSV here instead of stdout");

  auto* validate = app.add_subcommand("validate", "parse, build, and round-trip a file");
  validate->add_option("path", path, "instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed())
      return run_solve(path, method, eps, seed, seed_opt->count() > 0, out_path, timing);
    if (audit->parsed()) return run_audit_cmd(path, eps, out_path, oracle_budget);
    if (experiment->parsed()) return run_experiment(kind, params, out_path);
    if (validate->parsed()) return run_validate(path);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const CoverageError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const RoundingError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
