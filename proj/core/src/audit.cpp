#include "robsub/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "robsub/robust_max.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/scsc_scsk.hpp"

namespace robsub {

namespace {

constexpr double kSlack = 1e-6;
constexpr double kZero = 1e-12;

void add_line(AuditReport& report, std::string method, double ratio, double bound) {
  AuditLine line;
  line.method = std::move(method);
  line.empirical_ratio = ratio;
  line.bound = bound;
  line.pass = ratio <= bound * (1.0 + kSlack);
  report.all_pass = report.all_pass && line.pass;
  report.lines.push_back(std::move(line));
}

// Ratio of achieved cost to optimum for minimization; 1 when both vanish.
double min_ratio(double achieved, double opt) {
  if (opt <= kZero) return achieved <= kZero ? 1.0 : std::numeric_limits<double>::infinity();
  return achieved / opt;
}

// Ratio of optimum to achieved value for maximization; 1 when both vanish.
double max_ratio(double achieved, double opt) {
  if (opt <= kZero) return 1.0;
  if (achieved <= kZero) return std::numeric_limits<double>::infinity();
  return opt / achieved;
}

void audit_p1(AuditReport& report, const BuiltInstance& inst, const OracleBudget& budget) {
  const OracleSolution oracle = brute_force_min_max(inst.fs, *inst.family, budget);
  const double opt = oracle.value;

  RobustSolution mmin = mmin_robust_submin(inst.fs, *inst.family);
  add_line(report, "mmin", min_ratio(mmin.worst_value, opt), mmin.apriori_bound);

  RobustSolution aa = aa_submin(inst.fs, *inst.family);
  add_line(report, "aa", min_ratio(aa.worst_value, opt), aa.apriori_bound);

  if (inst.polytope) {
    RobustSolution cr = cr_submin(inst.fs, *inst.polytope, *inst.family);
    add_line(report, "cr", min_ratio(cr.worst_value, opt), cr.apriori_bound);
  }
  if (inst.has_certs_for_all_f()) {
    RobustSolution ea = ea_submin(inst.certs, *inst.family);
    if (std::isfinite(ea.apriori_bound))
      add_line(report, "ea", min_ratio(ea.worst_value, opt), ea.apriori_bound);
    else
      report.notices.push_back("ea: inexact certificates, no declared factor to audit");
  }
}

void audit_p2(AuditReport& report, const BuiltInstance& inst, const OracleBudget& budget) {
  const double eps = inst.source.eps;
  const int l = static_cast<int>(inst.gs.size());
  const OracleSolution oracle = brute_force_max_min(inst.gs, *inst.family, budget);
  const double opt = oracle.value;
  const double value_bound = 1.0 / (1.0 - eps);

  if (inst.family->kind() == ConstraintKind::CardinalityUpper) {
    SaturateResult sat = saturate_robust_max(inst.gs, inst.family->cardinality_bound(), eps);
    add_line(report, "saturate-value", max_ratio(sat.worst_value, opt), value_bound);
    add_line(report, "saturate-size", sat.set.size(),
             static_cast<double>(sat.relaxed_budget));
  } else {
    MultiKnapsackResult mk =
        multiknapsack_robust_max(inst.gs, inst.family->knapsack_list(), eps);
    add_line(report, "knapsack-value", max_ratio(mk.worst_value, opt), value_bound);
    add_line(report, "knapsack-violation", std::max(mk.violation.max_ratio, 1.0),
             std::max(mk.violation.allowed, 1.0));
    (void)l;
  }
}

// Harmonic factor degree: the largest per-element total of the truncated
// covering values. Integer-valued data gives the exact degree; otherwise we
// take the ceiling and say so.
int cover_degree(AuditReport& report, const BuiltInstance& inst) {
  const int n = inst.source.ground.n;
  double d = 0.0;
  for (int j = 0; j < n; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < inst.gs.size(); ++i)
      total += std::min(inst.gs[i].singleton(j), inst.source.targets[i]);
    d = std::max(d, total);
  }
  const double rounded = std::round(d);
  if (std::abs(d - rounded) > 1e-9)
    report.notices.push_back("harmonic degree is not integral; using its ceiling");
  return std::max(1, static_cast<int>(std::ceil(d - 1e-9)));
}

void audit_p3(AuditReport& report, const BuiltInstance& inst, const OracleBudget& budget) {
  const double eps = inst.source.eps;
  const OracleSolution oracle =
      brute_force_min_max_covering(inst.fs, inst.gs, inst.source.targets, budget);
  const double opt = oracle.value;
  const int n = inst.source.ground.n;

  BicriteriaSolution aa =
      robust_scsc(inst.fs, inst.gs, inst.source.targets, ScMethod::AA, eps);
  std::vector<SetFunctionHandle> favg{make_average(inst.fs)};
  const double kappa_avg = safe_curvature(favg[0]);
  const double lf = static_cast<double>(inst.fs.size());
  const double bound = lf * kappa_factor(n, kappa_avg) * harmonic(cover_degree(report, inst));
  add_line(report, "aa-cost", min_ratio(aa.objective, opt), bound);
  add_line(report, "aa-coverage", aa.rho >= 1.0 - 1e-9 ? 1.0 : 2.0, 1.0);
}

void audit_p4(AuditReport& report, const BuiltInstance& inst, const OracleBudget& budget) {
  const double eps = inst.source.eps;
  const int n = inst.source.ground.n;
  const int l = static_cast<int>(inst.gs.size());
  const OracleSolution oracle =
      brute_force_max_min_budgeted(inst.fs, inst.gs, inst.source.budgets, budget);
  const double opt = oracle.value;
  const double value_bound = 1.0 / (1.0 - eps);

  BicriteriaSolution mmin =
      robust_scsk(inst.fs, inst.gs, inst.source.budgets, ScMethod::MMin, eps);
  double kappa_wc = 0.0;
  for (const auto& f : inst.fs) kappa_wc = std::max(kappa_wc, safe_curvature(f));
  const double viol_bound =
      std::max(1.0, kappa_factor(n, kappa_wc) * std::log(l / eps));
  add_line(report, "mmin-value", max_ratio(mmin.objective, opt), value_bound);
  add_line(report, "mmin-violation", mmin.sigma, viol_bound);

  BicriteriaSolution aa =
      robust_scsk(inst.fs, inst.gs, inst.source.budgets, ScMethod::AA, eps);
  const double kappa_avg = [&] {
    std::vector<SetFunctionHandle> scaled;
    std::vector<double> coeffs(inst.fs.size(), 1.0 / static_cast<double>(inst.fs.size()));
    for (std::size_t i = 0; i < inst.fs.size(); ++i)
      scaled.push_back(make_scaled(inst.fs[i], 1.0 / inst.source.budgets[i]));
    return safe_curvature(make_weighted_sum(scaled, coeffs));
  }();
  const double aa_viol_bound = std::max(
      1.0, static_cast<double>(inst.fs.size()) * kappa_factor(n, kappa_avg) * std::log(l / eps));
  add_line(report, "aa-value", max_ratio(aa.objective, opt), value_bound);
  add_line(report, "aa-violation", aa.sigma, aa_viol_bound);

  if (inst.has_certs_for_all_f()) {
    BicriteriaSolution ea = robust_scsk(inst.fs, inst.gs, inst.source.budgets, ScMethod::EA, eps,
                                        inst.certs);
    bool exact = true;
    for (const auto& c : inst.certs) exact = exact && c.exact;
    if (exact) {
      const double lknap = static_cast<double>(inst.fs.size());
      const double ea_viol_bound = std::max(1.0, std::sqrt(lknap * std::log(l / eps)));
      add_line(report, "ea-value", max_ratio(ea.objective, opt), value_bound);
      add_line(report, "ea-violation", ea.sigma, ea_viol_bound);
    } else {
      report.notices.push_back("ea: inexact certificates, no declared factor to audit");
    }
  }
}

}  // namespace

AuditReport run_audit(const BuiltInstance& inst, const OracleBudget& budget) {
  AuditReport report;
  try {
    switch (inst.source.problem) {
      case ProblemTag::P1:
        audit_p1(report, inst, budget);
        break;
      case ProblemTag::P2:
        audit_p2(report, inst, budget);
        break;
      case ProblemTag::P3:
        audit_p3(report, inst, budget);
        break;
      case ProblemTag::P4:
        audit_p4(report, inst, budget);
        break;
    }
  } catch (const OracleBudgetError& e) {
    report.skipped = true;
    report.lines.clear();
    report.notices.push_back(std::string("audit skipped, oracle budget exceeded: ") + e.what());
  }
  return report;
}

std::string format_report(const AuditReport& report) {
  std::ostringstream out;
  for (const auto& line : report.lines) {
    out << line.method << ", " << line.empirical_ratio << ", " << line.bound << ", "
        << (line.pass ? "pass" : "fail") << "\n";
  }
  for (const auto& note : report.notices) out << "note: " << note << "\n";
  if (report.skipped)
    out << "audit skipped\n";
  else
    out << (report.all_pass ? "audit pass\n" : "audit fail\n");
  return out.str();
}

}  // namespace robsub
