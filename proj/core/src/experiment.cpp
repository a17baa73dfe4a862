#include "robsub/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/rng.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/types.hpp"

namespace robsub {

namespace {

// Random partition into `clusters` blocks via a shuffled round-robin.
std::vector<std::vector<ElementId>> random_partition(Rng& rng, int n, int clusters) {
  std::vector<int> order = rng.permutation(n);
  std::vector<std::vector<ElementId>> blocks(clusters);
  for (int i = 0; i < n; ++i) blocks[i % clusters].push_back(order[i]);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                              [](const auto& b) { return b.empty(); }),
               blocks.end());
  return blocks;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ExperimentResult run_synthetic(const SyntheticParams& params) {
  if (params.n < 1 || params.l < 1 || params.k < 1 || params.runs < 1 || params.clusters < 1)
    throw ValidationError("experiment: parameters must be positive");
  if (params.k > params.n) throw ValidationError("experiment: k exceeds n");

  ExperimentResult result;
  result.header_notes.push_back(
      "objective: worst case of " + std::to_string(params.l) +
      " clustered-sqrt functions, minimized subject to |X| >= " + std::to_string(params.k));
  result.header_notes.push_back(std::string("rng: ") + Rng::kAlgorithm);

  const GroundSet ground{params.n, {}};
  const ConstraintFamily family =
      ConstraintFamily::cardinality_lower(params.n, params.k);
  const CoveringFamily polytope = family.covering_polytope();

  for (int r = 0; r < params.runs; ++r) {
    const std::uint64_t run_seed = params.seed * 1000003ULL + static_cast<std::uint64_t>(r);
    Rng rng(run_seed);
    std::vector<SetFunctionHandle> fs;
    std::vector<EACertificate> certs;
    fs.reserve(params.l);
    for (int i = 0; i < params.l; ++i) {
      std::vector<double> w = rng.uniform_vector(params.n, 0.0, 1.0);
      auto clusters = random_partition(rng, params.n, params.clusters);
      FunctionSpec spec = FunctionSpec::clustered_sqrt(w, clusters);
      fs.push_back(build_function(spec, ground));
      // For a partition, sqrt of the total weight never exceeds the sum of
      // per-cluster square roots, so the plain weights certify the function.
      certs.push_back(make_ea_certificate(fs.back(), w, clusters.size() == 1, run_seed));
    }

    auto emit = [&](const char* method, auto&& solve) {
      const auto start = std::chrono::steady_clock::now();
      const double worst = solve();
      const auto stop = std::chrono::steady_clock::now();
      ExperimentRow row;
      row.seed = run_seed;
      row.l = params.l;
      row.method = method;
      row.worst_value = worst;
      row.wall_ms = params.timing
                        ? std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
                              .count()
                        : 0;
      result.rows.push_back(std::move(row));
    };

    emit("mmin", [&] { return mmin_robust_submin(fs, family).worst_value; });
    emit("aa", [&] { return aa_submin(fs, family).worst_value; });
    emit("cr", [&] { return cr_submin(fs, polytope, family).worst_value; });
    emit("ea", [&] { return ea_submin(certs, family).worst_value; });
  }
  return result;
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "seed,l,method,worst_value,wall_ms\r\n";
  for (const auto& row : result.rows) {
    out << row.seed << ',' << row.l << ',' << row.method << ','
        << format_value(row.worst_value) << ',' << row.wall_ms << "\r\n";
  }
  return out.str();
}

std::optional<std::string> soft_trend_warning(const ExperimentResult& result) {
  auto median_of = [&](const std::string& method) -> std::optional<double> {
    std::vector<double> v;
    for (const auto& row : result.rows)
      if (row.method == method) v.push_back(row.worst_value);
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  const auto mmin = median_of("mmin");
  const auto aa = median_of("aa");
  if (!mmin || !aa || *mmin <= *aa + 1e-12) return std::nullopt;
  std::ostringstream out;
  out << "soft trend violated: median(mmin) = " << *mmin << " > median(aa) = " << *aa;
  return out.str();
}

}  // namespace robsub
