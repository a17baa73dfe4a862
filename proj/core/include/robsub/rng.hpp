#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "robsub/types.hpp"

namespace robsub {

// Seedable 64-bit generator used by instance generators and sampling tests.
// The engine is std::mt19937_64 (fully specified by the standard), and all
// derived draws below use fixed arithmetic rather than std distributions, so
// a given seed reproduces the same stream on every platform and compiler.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi], inclusive. Modulo bias is below 2^-32 for
  // the desk-scale ranges used here and keeps the draw a single engine call.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  ElementSet random_subset(int n, double p = 0.5) {
    ElementSet s(n);
    for (int j = 0; j < n; ++j)
      if (bernoulli(p)) s.add(j);
    return s;
  }

  // Nonempty uniform-ish subset: redraws until at least one element appears.
  ElementSet random_nonempty_subset(int n, double p = 0.5) {
    while (true) {
      ElementSet s = random_subset(n, p);
      if (!s.empty() || n == 0) return s;
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = uniform_int(0, i);
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

  std::vector<double> uniform_vector(int n, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace robsub
