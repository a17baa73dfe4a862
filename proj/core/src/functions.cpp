#include "robsub/functions.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace robsub {
namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

void require_ids_in_range(const std::vector<ElementId>& ids, int n, const char* what) {
  for (ElementId j : ids)
    require(j >= 0 && j < n, std::string(what) + ": element id out of range");
}

void require_nonnegative(const std::vector<double>& v, const char* what) {
  for (double x : v) require(x >= 0.0, std::string(what) + ": negative entry");
}

class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> w) : w_(std::move(w)) {}
  double value(const ElementSet& s) const override {
    double total = 0.0;
    for (ElementId j : s.ids()) total += w_[static_cast<std::size_t>(j)];
    return total;
  }
  int universe_size() const override { return static_cast<int>(w_.size()); }
  const std::vector<double>* modular_weights() const override { return &w_; }

 private:
  std::vector<double> w_;
};

class ClusteredSqrtFunction final : public SetFunction {
 public:
  ClusteredSqrtFunction(std::vector<double> w, std::vector<std::vector<ElementId>> clusters)
      : w_(std::move(w)), clusters_(std::move(clusters)) {}
  double value(const ElementSet& s) const override {
    double total = 0.0;
    for (const auto& cluster : clusters_) {
      double mass = 0.0;
      for (ElementId j : cluster)
        if (s.contains(j)) mass += w_[static_cast<std::size_t>(j)];
      total += std::sqrt(mass);
    }
    return total;
  }
  int universe_size() const override { return static_cast<int>(w_.size()); }

 private:
  std::vector<double> w_;
  std::vector<std::vector<ElementId>> clusters_;
};

class FacilityLocationFunction final : public SetFunction {
 public:
  explicit FacilityLocationFunction(std::vector<std::vector<double>> sim)
      : sim_(std::move(sim)) {}
  double value(const ElementSet& s) const override {
    if (s.empty()) return 0.0;
    const auto members = s.ids();
    double total = 0.0;
    for (const auto& row : sim_) {
      double best = 0.0;
      for (ElementId j : members) best = std::max(best, row[static_cast<std::size_t>(j)]);
      total += best;
    }
    return total;
  }
  int universe_size() const override { return static_cast<int>(sim_.size()); }

 private:
  std::vector<std::vector<double>> sim_;
};

class FeatureBasedFunction final : public SetFunction {
 public:
  FeatureBasedFunction(std::vector<std::vector<double>> feat, ConcaveKind kind)
      : feat_(std::move(feat)), kind_(kind) {}
  double value(const ElementSet& s) const override {
    if (feat_.empty()) return 0.0;
    const std::size_t d = feat_.front().size();
    double total = 0.0;
    const auto members = s.ids();
    for (std::size_t c = 0; c < d; ++c) {
      double mass = 0.0;
      for (ElementId j : members) mass += feat_[static_cast<std::size_t>(j)][c];
      total += kind_ == ConcaveKind::Sqrt ? std::sqrt(mass) : std::log1p(mass);
    }
    return total;
  }
  int universe_size() const override { return static_cast<int>(feat_.size()); }

 private:
  std::vector<std::vector<double>> feat_;
  ConcaveKind kind_;
};

class CoverageFunction final : public SetFunction {
 public:
  CoverageFunction(std::vector<std::vector<int>> cover_map, std::vector<double> item_weights)
      : cover_map_(std::move(cover_map)), item_weights_(std::move(item_weights)) {}
  double value(const ElementSet& s) const override {
    std::vector<char> covered(item_weights_.size(), 0);
    double total = 0.0;
    for (ElementId j : s.ids()) {
      for (int item : cover_map_[static_cast<std::size_t>(j)]) {
        if (!covered[static_cast<std::size_t>(item)]) {
          covered[static_cast<std::size_t>(item)] = 1;
          total += item_weights_[static_cast<std::size_t>(item)];
        }
      }
    }
    return total;
  }
  int universe_size() const override { return static_cast<int>(cover_map_.size()); }

 private:
  std::vector<std::vector<int>> cover_map_;
  std::vector<double> item_weights_;
};

class TruncationFunction final : public SetFunction {
 public:
  TruncationFunction(std::shared_ptr<const SetFunction> inner, double cap)
      : inner_(std::move(inner)), cap_(cap) {}
  double value(const ElementSet& s) const override {
    return std::min(inner_->value(s), cap_);
  }
  int universe_size() const override { return inner_->universe_size(); }

 private:
  std::shared_ptr<const SetFunction> inner_;
  double cap_;
};

class WeightedSumFunction final : public SetFunction {
 public:
  WeightedSumFunction(std::vector<std::shared_ptr<const SetFunction>> terms,
                      std::vector<double> coeffs)
      : terms_(std::move(terms)), coeffs_(std::move(coeffs)) {}
  double value(const ElementSet& s) const override {
    double total = 0.0;
    for (std::size_t t = 0; t < terms_.size(); ++t) total += coeffs_[t] * terms_[t]->value(s);
    return total;
  }
  int universe_size() const override {
    return terms_.empty() ? 0 : terms_.front()->universe_size();
  }

 private:
  std::vector<std::shared_ptr<const SetFunction>> terms_;
  std::vector<double> coeffs_;
};

std::shared_ptr<const SetFunction> build_impl(const FunctionSpec& spec, int n) {
  using Family = FunctionSpec::Family;
  switch (spec.family) {
    case Family::Modular: {
      require(static_cast<int>(spec.weights.size()) == n, "modular: weight count != n");
      require_nonnegative(spec.weights, "modular");
      return std::make_shared<ModularFunction>(spec.weights);
    }
    case Family::ClusteredSqrt: {
      require(static_cast<int>(spec.weights.size()) == n, "clustered_sqrt: weight count != n");
      require_nonnegative(spec.weights, "clustered_sqrt");
      require(!spec.clusters.empty(), "clustered_sqrt: no clusters");
      for (const auto& cluster : spec.clusters)
        require_ids_in_range(cluster, n, "clustered_sqrt");
      return std::make_shared<ClusteredSqrtFunction>(spec.weights, spec.clusters);
    }
    case Family::FacilityLocation: {
      require(static_cast<int>(spec.similarity.size()) == n,
              "facility_location: similarity must have n rows");
      for (const auto& row : spec.similarity) {
        require(static_cast<int>(row.size()) == n, "facility_location: similarity must be n x n");
        require_nonnegative(row, "facility_location");
      }
      return std::make_shared<FacilityLocationFunction>(spec.similarity);
    }
    case Family::FeatureBased: {
      require(static_cast<int>(spec.features.size()) == n, "feature_based: feature rows != n");
      const std::size_t d = spec.features.empty() ? 0 : spec.features.front().size();
      for (const auto& row : spec.features) {
        require(row.size() == d, "feature_based: ragged feature matrix");
        require_nonnegative(row, "feature_based");
      }
      return std::make_shared<FeatureBasedFunction>(spec.features, spec.concave);
    }
    case Family::Coverage: {
      require(static_cast<int>(spec.cover_map.size()) == n, "coverage: cover map rows != n");
      require_nonnegative(spec.item_weights, "coverage");
      const int items = static_cast<int>(spec.item_weights.size());
      for (const auto& row : spec.cover_map)
        for (int item : row)
          require(item >= 0 && item < items, "coverage: item id out of range");
      return std::make_shared<CoverageFunction>(spec.cover_map, spec.item_weights);
    }
    case Family::Truncation: {
      require(spec.inner.size() == 1, "truncation: exactly one inner spec required");
      require(spec.cap >= 0.0, "truncation: cap must be nonnegative");
      return std::make_shared<TruncationFunction>(build_impl(spec.inner.front(), n), spec.cap);
    }
    case Family::WeightedSum: {
      require(!spec.inner.empty(), "weighted_sum: no terms");
      require(spec.inner.size() == spec.coefficients.size(),
              "weighted_sum: term/coefficient count mismatch");
      require_nonnegative(spec.coefficients, "weighted_sum");
      std::vector<std::shared_ptr<const SetFunction>> terms;
      terms.reserve(spec.inner.size());
      for (const auto& in : spec.inner) terms.push_back(build_impl(in, n));
      return std::make_shared<WeightedSumFunction>(std::move(terms), spec.coefficients);
    }
  }
  throw ValidationError("unknown function family");
}

}  // namespace

FunctionSpec FunctionSpec::modular(std::vector<double> w) {
  FunctionSpec s;
  s.family = Family::Modular;
  s.weights = std::move(w);
  return s;
}

FunctionSpec FunctionSpec::clustered_sqrt(std::vector<double> w,
                                          std::vector<std::vector<ElementId>> clusters) {
  FunctionSpec s;
  s.family = Family::ClusteredSqrt;
  s.weights = std::move(w);
  s.clusters = std::move(clusters);
  return s;
}

FunctionSpec FunctionSpec::facility_location(std::vector<std::vector<double>> sim) {
  FunctionSpec s;
  s.family = Family::FacilityLocation;
  s.similarity = std::move(sim);
  return s;
}

FunctionSpec FunctionSpec::feature_based(std::vector<std::vector<double>> feat, ConcaveKind kind) {
  FunctionSpec s;
  s.family = Family::FeatureBased;
  s.features = std::move(feat);
  s.concave = kind;
  return s;
}

FunctionSpec FunctionSpec::coverage(std::vector<std::vector<int>> cover_map,
                                    std::vector<double> item_weights) {
  FunctionSpec s;
  s.family = Family::Coverage;
  s.cover_map = std::move(cover_map);
  s.item_weights = std::move(item_weights);
  return s;
}

FunctionSpec FunctionSpec::truncation(FunctionSpec inner, double cap) {
  FunctionSpec s;
  s.family = Family::Truncation;
  s.inner.push_back(std::move(inner));
  s.cap = cap;
  return s;
}

FunctionSpec FunctionSpec::weighted_sum(std::vector<FunctionSpec> terms,
                                        std::vector<double> coeffs) {
  FunctionSpec s;
  s.family = Family::WeightedSum;
  s.inner = std::move(terms);
  s.coefficients = std::move(coeffs);
  return s;
}

SetFunctionHandle::SetFunctionHandle(std::shared_ptr<const SetFunction> fn) : fn_(std::move(fn)) {
  if (!fn_) throw ValidationError("null function");
  const int n = fn_->universe_size();
  singleton_.resize(static_cast<std::size_t>(n));
  top_gain_.resize(static_cast<std::size_t>(n));
  const ElementSet full = ElementSet::full(n);
  full_value_ = fn_->value(full);
  ElementSet probe(n);
  for (int j = 0; j < n; ++j) {
    probe.add(j);
    singleton_[static_cast<std::size_t>(j)] = fn_->value(probe);
    probe.remove(j);
    top_gain_[static_cast<std::size_t>(j)] = full_value_ - fn_->value(full.without(j));
  }
}

int SetFunctionHandle::universe_size() const {
  if (!fn_) throw ValidationError("empty function handle");
  return fn_->universe_size();
}

const SetFunction& SetFunctionHandle::fn() const {
  if (!fn_) throw ValidationError("empty function handle");
  return *fn_;
}

double SetFunctionHandle::eval(const ElementSet& s) const {
  if (s.universe_size() != universe_size())
    throw OutOfRangeError("set universe does not match function universe");
  return fn_->value(s);
}

double SetFunctionHandle::gain(ElementId j, const ElementSet& s) const {
  if (s.contains(j)) throw ValidationError("gain: element already in the set");
  return eval(s.with(j)) - eval(s);
}

double SetFunctionHandle::singleton(ElementId j) const {
  if (j < 0 || j >= universe_size()) throw OutOfRangeError("singleton: id out of range");
  return singleton_[static_cast<std::size_t>(j)];
}

double SetFunctionHandle::top_gain(ElementId j) const {
  if (j < 0 || j >= universe_size()) throw OutOfRangeError("top_gain: id out of range");
  return top_gain_[static_cast<std::size_t>(j)];
}

SetFunctionHandle build_function(const FunctionSpec& spec, const GroundSet& ground) {
  ground.validate();
  return SetFunctionHandle(build_impl(spec, ground.n));
}

double total_curvature(const SetFunctionHandle& f) {
  const int n = f.universe_size();
  double min_ratio = 2.0;
  for (int j = 0; j < n; ++j) {
    const double s = f.singleton(j);
    if (s > 0.0) min_ratio = std::min(min_ratio, f.top_gain(j) / s);
  }
  if (min_ratio > 1.5)
    throw DegenerateFunctionError("total_curvature: every singleton value is zero");
  return 1.0 - std::clamp(min_ratio, 0.0, 1.0);
}

double safe_curvature(const SetFunctionHandle& f) {
  try {
    return total_curvature(f);
  } catch (const DegenerateFunctionError&) {
    return 0.0;
  }
}

double kappa_factor(double v, double kappa) {
  if (v < 1.0) throw DomainError("kappa_factor: v must be >= 1");
  if (kappa < 0.0 || kappa > 1.0) throw DomainError("kappa_factor: kappa must be in [0, 1]");
  return v / (1.0 + (1.0 - kappa) * (v - 1.0));
}

namespace {

std::vector<std::shared_ptr<const SetFunction>> collect(std::span<const SetFunctionHandle> fs) {
  if (fs.empty()) throw ValidationError("empty function list");
  std::vector<std::shared_ptr<const SetFunction>> out;
  out.reserve(fs.size());
  const int n = fs.front().universe_size();
  for (const auto& f : fs) {
    if (f.universe_size() != n) throw ValidationError("functions live on different universes");
    out.push_back(f.ptr());
  }
  return out;
}

}  // namespace

double aggregate(std::span<const SetFunctionHandle> fs, AggregateMode mode, const ElementSet& s) {
  if (fs.empty()) throw ValidationError("aggregate: empty function list");
  double total = 0.0;
  double best = fs.front().eval(s);
  for (const auto& f : fs) {
    const double v = f.eval(s);
    total += v;
    best = std::max(best, v);
  }
  return mode == AggregateMode::Avg ? total / static_cast<double>(fs.size()) : best;
}

SetFunctionHandle make_average(std::span<const SetFunctionHandle> fs) {
  auto terms = collect(fs);
  std::vector<double> coeffs(terms.size(), 1.0 / static_cast<double>(terms.size()));
  return SetFunctionHandle(
      std::make_shared<WeightedSumFunction>(std::move(terms), std::move(coeffs)));
}

SetFunctionHandle make_weighted_sum(std::span<const SetFunctionHandle> fs,
                                    std::span<const double> coeffs) {
  auto terms = collect(fs);
  if (terms.size() != coeffs.size())
    throw ValidationError("make_weighted_sum: term/coefficient count mismatch");
  std::vector<double> c(coeffs.begin(), coeffs.end());
  require_nonnegative(c, "make_weighted_sum");
  return SetFunctionHandle(std::make_shared<WeightedSumFunction>(std::move(terms), std::move(c)));
}

SetFunctionHandle make_truncated(const SetFunctionHandle& f, double cap) {
  if (cap < 0.0) throw ValidationError("make_truncated: cap must be nonnegative");
  return SetFunctionHandle(std::make_shared<TruncationFunction>(f.ptr(), cap));
}

SetFunctionHandle make_scaled(const SetFunctionHandle& f, double coeff) {
  if (coeff < 0.0) throw ValidationError("make_scaled: coefficient must be nonnegative");
  std::vector<std::shared_ptr<const SetFunction>> terms{f.ptr()};
  return SetFunctionHandle(
      std::make_shared<WeightedSumFunction>(std::move(terms), std::vector<double>{coeff}));
}

std::vector<double> eval_all(std::span<const SetFunctionHandle> fs, const ElementSet& s) {
  std::vector<double> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(f.eval(s));
  return out;
}

double max_value(std::span<const SetFunctionHandle> fs, const ElementSet& s) {
  return aggregate(fs, AggregateMode::Max, s);
}

double min_value(std::span<const SetFunctionHandle> fs, const ElementSet& s) {
  if (fs.empty()) throw ValidationError("min_value: empty function list");
  double best = fs.front().eval(s);
  for (const auto& f : fs.subspan(1)) best = std::min(best, f.eval(s));
  return best;
}

}  // namespace robsub
