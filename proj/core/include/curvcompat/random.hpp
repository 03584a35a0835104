#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "curvcompat/tensor.hpp"

namespace curvcompat {

struct RandomSpec {
  std::uint64_t seed = 0;
  double scale = 1.0;  // components drawn from [-scale, scale]
};

/// Seeded source of uniform doubles. Output depends only on the seed, not on
/// the standard library's distribution implementation.
class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

Matrix random_matrix(const RandomSpec& spec, Dim n);
Rank4 random_rank4(const RandomSpec& spec, Dim n);
Sym2 random_sym2(const RandomSpec& spec, Dim n);

/// Q^T diag(signature) Q with Q = I + 0.3 R, R seeded with entries in [-1, 1].
/// `signature` lists the desired eigenvalue signs (+1/-1); it must have n
/// entries.
MetricValue random_metric(const RandomSpec& spec, Dim n, std::span<const int> signature);

/// gct_project of a seeded random rank-4 tensor, resampled while its norm is
/// below the floor. Throws after 100 failed attempts.
GCT random_gct(const RandomSpec& spec, Dim n, double floor = 1e-14);

}  // namespace curvcompat
