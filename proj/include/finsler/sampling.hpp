#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "finsler/metric.hpp"

namespace finsler {

/// Deterministic uniform doubles in [lo, hi) from a 64-bit Mersenne Twister.
/// The mapping from raw bits to doubles is fixed here rather than left to
/// std::uniform_real_distribution, so samples are identical across standard
/// library implementations.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed);
  double next(double lo, double hi);
  Direction direction(int dim, double half_width);

 private:
  std::mt19937_64 engine_;
};

/// Acceptance rule for random test directions.
struct SampleConfig {
  double half_width = 5.0;
  /// Minimum |A(y)| / |y|^m. Rejects points near the null cone, where
  /// g is badly conditioned and every tolerance loses meaning.
  double min_relative_a = 1e-2;
  /// Maximum condition number of g.
  double max_condition = 1e3;
  /// Minimum |y^i| / max|y| (0 disables); used for the printed closed forms
  /// that divide by components.
  double min_relative_component = 0.0;
  /// Give up after this many draws per accepted point.
  int max_draws_per_point = 1000;
};

/// `count` points drawn uniformly from the box, no filtering.
std::vector<Direction> sample_box(int dim, int count, std::uint64_t seed, double half_width = 5.0);

/// `count` Regular points of `metric` passing the SampleConfig filters.
/// Throws InvalidInput if the draw budget is exhausted.
std::vector<Direction> sample_regular_points(const PolynomialMetric& metric, int count,
                                             std::uint64_t seed, const SampleConfig& config = {});

}  // namespace finsler
