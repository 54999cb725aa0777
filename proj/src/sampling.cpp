#include "finsler/sampling.hpp"

#include <cmath>

#include "finsler/error.hpp"
#include "finsler/power.hpp"

namespace finsler {

UniformSampler::UniformSampler(std::uint64_t seed) : engine_(seed) {}

double UniformSampler::next(double lo, double hi) {
  // Top 53 bits give a uniform double in [0, 1).
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Direction UniformSampler::direction(int dim, double half_width) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (auto& x : v) x = next(-half_width, half_width);
  return Direction(std::move(v));
}

std::vector<Direction> sample_box(int dim, int count, std::uint64_t seed, double half_width) {
  if (dim < 1 || count < 0) throw Error(ErrorCode::InvalidInput, "sample_box needs dim >= 1, count >= 0");
  UniformSampler rng(seed);
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(rng.direction(dim, half_width));
  return out;
}

std::vector<Direction> sample_regular_points(const PolynomialMetric& metric, int count,
                                             std::uint64_t seed, const SampleConfig& config) {
  if (count < 0) throw Error(ErrorCode::InvalidInput, "negative sample count");
  UniformSampler rng(seed);
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(count));
  const long budget = static_cast<long>(config.max_draws_per_point) * std::max(count, 1);
  long draws = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++draws > budget) throw Error(ErrorCode::InvalidInput, "sampler exhausted its draw budget");
    Direction y = rng.direction(metric.dim(), config.half_width);
    if (config.min_relative_component > 0.0) {
      bool near_plane = false;
      for (int i = 0; i < y.dim(); ++i) {
        near_plane = near_plane || std::abs(y[i]) < config.min_relative_component * y.max_abs();
      }
      if (near_plane) continue;
    }
    const DomainStatus status = domain_status(metric, y);
    if (status.classification != DomainClass::Regular) continue;
    const double scale = std::pow(y.norm(), metric.degree());
    if (std::abs(status.a_value) < config.min_relative_a * scale) continue;
    try {
      if (condition_number(fundamental_tensor(metric, y)) > config.max_condition) continue;
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace finsler
