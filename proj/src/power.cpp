#include "finsler/power.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>

#include "finsler/error.hpp"

namespace finsler {

namespace {

Eigen::MatrixXd to_matrix(const Tensor& t) {
  if (t.order() != 2) throw Error(ErrorCode::ShapeMismatch, "expected an order-2 tensor");
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
  }
  return m;
}

Tensor to_symmetric_tensor(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Tensor t(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = 0.5 * (m(i, j) + m(j, i));
  }
  return t;
}

std::vector<SetPartition> build_partitions(int r) {
  // Grow partitions one element at a time: element k joins an existing block
  // or opens a new one.
  std::vector<SetPartition> parts{SetPartition{}};
  for (int k = 0; k < r; ++k) {
    std::vector<SetPartition> next;
    for (const auto& p : parts) {
      for (std::size_t b = 0; b < p.size(); ++b) {
        auto q = p;
        q[b].push_back(k);
        next.push_back(std::move(q));
      }
      auto q = p;
      q.push_back({k});
      next.push_back(std::move(q));
    }
    parts = std::move(next);
  }
  return parts;
}

}  // namespace

double real_power(double base, Rational exponent) {
  if (base == 0.0) throw Error(ErrorCode::ZeroBase, "power of a zero base");
  if (base > 0.0) return std::pow(base, exponent.to_double());
  if (exponent.den() % 2 == 0) {
    throw Error(ErrorCode::DegenerateDomain, "even root of a negative value");
  }
  const double magnitude = std::pow(-base, exponent.to_double());
  return (exponent.num() % 2 == 0) ? magnitude : -magnitude;
}

const std::vector<SetPartition>& set_partitions(int r) {
  static const std::array<std::vector<SetPartition>, 5> table{
      build_partitions(0), build_partitions(1), build_partitions(2), build_partitions(3),
      build_partitions(4)};
  if (r < 0 || r > 4) throw Error(ErrorCode::UnsupportedOrder, "partition table covers orders 0..4");
  return table[static_cast<std::size_t>(r)];
}

std::vector<Rational> partition_weights(Rational exponent, int order) {
  std::vector<Rational> w;
  for (int s = 0; s <= order; ++s) w.push_back(falling_factorial(exponent, s));
  return w;
}

Tensor power_derivative(const PowerDerivativeRequest& request) {
  const auto& bundle = request.bundle;
  const int r = request.order;
  if (r < 0 || r > 4) throw Error(ErrorCode::UnsupportedOrder, "power_derivative supports orders 0..4");
  if (bundle.a0 == 0.0) throw Error(ErrorCode::ZeroBase, "A(y) = 0");

  const auto weights = partition_weights(request.exponent, r);
  // scale[s] = p^(s) A^(p - s)
  std::vector<double> scale;
  for (int s = 0; s <= r; ++s) {
    scale.push_back(weights[static_cast<std::size_t>(s)].is_zero()
                        ? 0.0
                        : weights[static_cast<std::size_t>(s)].to_double() *
                              real_power(bundle.a0, request.exponent - Rational(s)));
  }

  Tensor out(bundle.dim(), r);
  if (r == 0) {
    out[0] = scale[0];
    return out;
  }
  const auto& partitions = set_partitions(r);
  std::vector<int> slice;
  for (const auto& tuple : sorted_tuples(bundle.dim(), r)) {
    double acc = 0.0;
    for (const auto& partition : partitions) {
      const double w = scale[partition.size()];
      if (w == 0.0) continue;
      double prod = w;
      for (const auto& block : partition) {
        slice.clear();
        for (int pos : block) slice.push_back(tuple[static_cast<std::size_t>(pos)]);
        prod *= bundle.order(static_cast<int>(block.size())).at(slice);
      }
      acc += prod;
    }
    fill_symmetric(out, tuple, acc);
  }
  return out;
}

DomainStatus require_usable_domain(const PolynomialMetric& metric, const Direction& y,
                                   std::optional<double> epsilon) {
  auto status = domain_status(metric, y, epsilon);
  if (!status.usable()) {
    throw Error(ErrorCode::DegenerateDomain,
                to_string(status.classification) + " point (A = " + std::to_string(status.a_value) + ")");
  }
  return status;
}

Tensor fundamental_tensor(const DerivativeBundle& bundle) {
  return 0.5 * power_derivative({bundle, metric_exponent(bundle.degree), 2});
}

Tensor fundamental_tensor(const PolynomialMetric& metric, const Direction& y) {
  require_usable_domain(metric, y);
  return fundamental_tensor(derivative_bundle(metric, y));
}

RankOneSplit rank_one_split(const DerivativeBundle& bundle) {
  const Rational p = metric_exponent(bundle.degree);
  const Rational inv_m(1, bundle.degree);
  const double alpha = inv_m.to_double() * real_power(bundle.a0, p - Rational(1));
  const double beta = (inv_m * (p - Rational(1))).to_double() * real_power(bundle.a0, p - Rational(2));
  std::vector<double> a(bundle.a1.values().begin(), bundle.a1.values().end());
  return {alpha, beta, bundle.a2, std::move(a)};
}

double condition_number(const Tensor& matrix) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_matrix(matrix));
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

Tensor invert_direct(const Tensor& matrix, double max_condition) {
  const double cond = condition_number(matrix);
  if (!(cond <= max_condition)) {
    throw Error(ErrorCode::SingularMetric, "condition estimate " + std::to_string(cond));
  }
  return to_symmetric_tensor(to_matrix(matrix).fullPivLu().inverse());
}

Tensor invert_rank_one(const DerivativeBundle& bundle, const InverseOptions& options) {
  const auto split = rank_one_split(bundle);
  const Tensor b_inv = invert_direct(split.b, options.max_condition);
  const Eigen::MatrixXd bi = to_matrix(b_inv);
  const Eigen::Map<const Eigen::VectorXd> a(split.a.data(), static_cast<Eigen::Index>(split.a.size()));
  const Eigen::VectorXd w = bi * a;
  const double s = a.dot(w);
  const double denom = split.alpha + split.beta * s;
  if (!(std::abs(denom) > options.denominator_tolerance * (std::abs(split.alpha) + std::abs(split.beta * s)))) {
    throw Error(ErrorCode::SingularMetric, "rank-one update denominator degenerates");
  }
  const Eigen::MatrixXd inv = bi / split.alpha - (split.beta / (split.alpha * denom)) * (w * w.transpose());
  return to_symmetric_tensor(inv);
}

InverseResult inverse_fundamental_tensor(const DerivativeBundle& bundle, const Tensor& g,
                                         const InverseOptions& options) {
  const double cond = condition_number(g);
  if (!(cond <= options.max_condition)) {
    throw Error(ErrorCode::SingularMetric, "fundamental tensor condition estimate " + std::to_string(cond));
  }
  try {
    return {invert_rank_one(bundle, options), InversePath::RankOne, cond};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMetric) throw;
  }
  return {invert_direct(g, options.max_condition), InversePath::Direct, cond};
}

Tensor cartan_torsion(const DerivativeBundle& bundle) {
  return 0.25 * power_derivative({bundle, metric_exponent(bundle.degree), 3});
}

Tensor cartan_torsion(const PolynomialMetric& metric, const Direction& y) {
  require_usable_domain(metric, y);
  return cartan_torsion(derivative_bundle(metric, y));
}

Tensor mixed_torsion(const Tensor& g_inv, const Tensor& c_cov) {
  if (g_inv.order() != 2 || c_cov.order() != 3 || g_inv.dim() != c_cov.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "mixed_torsion");
  }
  const int n = c_cov.dim();
  Tensor out(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) acc += g_inv(i, m) * c_cov(m, j, k);
        out(i, j, k) = acc;
      }
    }
  }
  return out;
}

Tensor torsion_gradient(const DerivativeBundle& bundle) {
  return 0.25 * power_derivative({bundle, metric_exponent(bundle.degree), 4});
}

Tensor torsion_gradient(const PolynomialMetric& metric, const Direction& y) {
  require_usable_domain(metric, y);
  return torsion_gradient(derivative_bundle(metric, y));
}

GeometryPoint evaluate_geometry(const PolynomialMetric& metric, const Direction& y,
                                const GeometryOptions& options) {
  auto status = require_usable_domain(metric, y, options.domain_epsilon);
  const auto bundle = derivative_bundle(metric, y);
  Tensor g = fundamental_tensor(bundle);
  auto inverse = inverse_fundamental_tensor(bundle, g, options.inverse);
  Tensor c = cartan_torsion(bundle);
  Tensor c_mixed = mixed_torsion(inverse.g_inv, c);
  return GeometryPoint{y,
                       std::move(status),
                       bundle.a0,
                       real_power(bundle.a0, Rational(1, metric.degree())),
                       std::move(g),
                       std::move(inverse.g_inv),
                       std::move(c),
                       std::move(c_mixed),
                       torsion_gradient(bundle),
                       inverse.condition,
                       inverse.path};
}

}  // namespace finsler
