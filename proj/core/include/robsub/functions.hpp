#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "robsub/types.hpp"

namespace robsub {

// Abstract monotone nondecreasing, normalized (value({}) == 0) submodular
// set function on a fixed universe. Implementations must be pure: value()
// depends only on the argument set.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual double value(const ElementSet& s) const = 0;
  virtual int universe_size() const = 0;
  // Modular functions expose their weights so exhaustive enumeration can
  // evaluate incrementally; everything else returns nullptr.
  virtual const std::vector<double>* modular_weights() const { return nullptr; }
};

enum class ConcaveKind { Sqrt, Log1p };

// Serializable description of a function. `build_function` turns a spec into
// an evaluable handle after validating it against a ground set.
struct FunctionSpec {
  enum class Family {
    Modular,          // w(S)
    ClusteredSqrt,    // sum_c sqrt(w(S intersect C_c))
    FacilityLocation, // sum_i max_{j in S} sim[i][j]
    FeatureBased,     // sum_d phi(sum_{j in S} feat[j][d])
    Coverage,         // weight of items covered by S
    Truncation,       // min(inner(S), cap)
    WeightedSum       // sum_t coeff_t * inner_t(S)
  };

  Family family = Family::Modular;
  std::vector<double> weights;                   // Modular, ClusteredSqrt
  std::vector<std::vector<ElementId>> clusters;  // ClusteredSqrt (may overlap)
  std::vector<std::vector<double>> similarity;   // FacilityLocation, n x n
  std::vector<std::vector<double>> features;     // FeatureBased, n x d
  ConcaveKind concave = ConcaveKind::Sqrt;       // FeatureBased
  std::vector<std::vector<int>> cover_map;       // Coverage: element -> item ids
  std::vector<double> item_weights;              // Coverage
  double cap = 0.0;                              // Truncation
  std::vector<FunctionSpec> inner;               // Truncation (1), WeightedSum (k)
  std::vector<double> coefficients;              // WeightedSum, nonnegative

  static FunctionSpec modular(std::vector<double> w);
  static FunctionSpec clustered_sqrt(std::vector<double> w,
                                     std::vector<std::vector<ElementId>> clusters);
  static FunctionSpec facility_location(std::vector<std::vector<double>> sim);
  static FunctionSpec feature_based(std::vector<std::vector<double>> feat, ConcaveKind kind);
  static FunctionSpec coverage(std::vector<std::vector<int>> cover_map,
                               std::vector<double> item_weights);
  static FunctionSpec truncation(FunctionSpec inner, double cap);
  static FunctionSpec weighted_sum(std::vector<FunctionSpec> terms, std::vector<double> coeffs);
};

// Evaluable function plus caches that the solvers use constantly: singleton
// values f({j}), top gains f(j | V \ j), and f(V). Copying a handle is cheap
// (shared function, copied caches).
class SetFunctionHandle {
 public:
  SetFunctionHandle() = default;
  explicit SetFunctionHandle(std::shared_ptr<const SetFunction> fn);

  bool valid() const { return fn_ != nullptr; }
  int universe_size() const;

  double eval(const ElementSet& s) const;
  // f(S + j) - f(S); requires j not in S.
  double gain(ElementId j, const ElementSet& s) const;
  double singleton(ElementId j) const;
  // f(j | V \ j).
  double top_gain(ElementId j) const;
  double value_of_full() const { return full_value_; }

  bool monotone() const { return monotone_; }
  bool normalized() const { return normalized_; }

  const SetFunction& fn() const;
  std::shared_ptr<const SetFunction> ptr() const { return fn_; }

 private:
  std::shared_ptr<const SetFunction> fn_;
  std::vector<double> singleton_;
  std::vector<double> top_gain_;
  double full_value_ = 0.0;
  bool monotone_ = true;
  bool normalized_ = true;
};

// Validates the description against the ground set and returns an evaluable handle.
SetFunctionHandle build_function(const FunctionSpec& spec, const GroundSet& ground);

// Total curvature 1 - min_{j: f(j) > 0} f(j | V \ j) / f(j). Zero for
// modular functions; throws DegenerateFunctionError when every singleton
// value is zero.
double total_curvature(const SetFunctionHandle& f);

// Like total_curvature, but treats the identically-zero function as modular
// (curvature 0) instead of throwing.
double safe_curvature(const SetFunctionHandle& f);

// v / (1 + (1 - kappa) * (v - 1)) for v >= 1, kappa in [0, 1]. Equals 1 at
// kappa = 0 and v at kappa = 1; nondecreasing in both arguments.
double kappa_factor(double v, double kappa);

enum class AggregateMode { Avg, Max };

// Average or maximum of the list values at S. Handles must share a universe.
double aggregate(std::span<const SetFunctionHandle> fs, AggregateMode mode, const ElementSet& s);

// First-class handle for f_avg = (1/l) sum_i f_i.
SetFunctionHandle make_average(std::span<const SetFunctionHandle> fs);
// sum_t coeffs[t] * fs[t] with nonnegative coefficients.
SetFunctionHandle make_weighted_sum(std::span<const SetFunctionHandle> fs,
                                    std::span<const double> coeffs);
// min(f, cap), cap >= 0.
SetFunctionHandle make_truncated(const SetFunctionHandle& f, double cap);
// coeff * f, coeff >= 0.
SetFunctionHandle make_scaled(const SetFunctionHandle& f, double coeff);

std::vector<double> eval_all(std::span<const SetFunctionHandle> fs, const ElementSet& s);
double max_value(std::span<const SetFunctionHandle> fs, const ElementSet& s);
double min_value(std::span<const SetFunctionHandle> fs, const ElementSet& s);

}  // namespace robsub
