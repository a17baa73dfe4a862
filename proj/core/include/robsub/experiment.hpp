#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace robsub {

// Clustered square-root objectives with uniform random weights, minimized
// under the covering reading of the cardinality constraint (|X| >= k).
struct SyntheticParams {
  int n = 50;
  int l = 3;
  int k = 10;
  int runs = 20;
  std::uint64_t seed = 7;
  int clusters = 5;
  // Wall time is reported as 0 unless enabled, keeping repeated runs
  // byte-identical.
  bool timing = false;
};

struct ExperimentRow {
  std::uint64_t seed = 0;
  int l = 0;
  std::string method;
  double worst_value = 0.0;
  long long wall_ms = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::vector<std::string> header_notes;
};

// Runs methods {mmin, aa, cr, ea} on `runs` seeded instances. Rows appear
// in run-major, fixed method order; identical params give identical rows.
ExperimentResult run_synthetic(const SyntheticParams& params);

// RFC 4180 CSV with header "seed,l,method,worst_value,wall_ms".
std::string to_csv(const ExperimentResult& result);

// Warning when the qualitative expectation median(mmin) <= median(aa) fails;
// nullopt when it holds.
std::optional<std::string> soft_trend_warning(const ExperimentResult& result);

}  // namespace robsub
