#pragma once

#include <string>
#include <vector>

#include "robsub/instance.hpp"
#include "robsub/oracle.hpp"

namespace robsub {

// One solver-versus-oracle comparison. pass means
// empirical_ratio <= bound * (1 + 1e-6).
struct AuditLine {
  std::string method;
  double empirical_ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditLine> lines;
  std::vector<std::string> notices;
  bool all_pass = true;
  bool skipped = false;  // oracle budget exceeded; no verdict
};

// Solve the instance with every applicable method, compute the exact
// optimum by enumeration, and compare each measured ratio against the
// method's declared factor. Oracle budget overruns skip the audit with a
// notice instead of failing it.
AuditReport run_audit(const BuiltInstance& inst, const OracleBudget& budget = {});

// "method, empirical_ratio, bound, pass|fail" lines plus notices.
std::string format_report(const AuditReport& report);

}  // namespace robsub
