#include "finsler/oracle/oracle.hpp"

#include <Eigen/Dense>
#include <cfloat>
#include <cmath>
#include <limits>

#include "finsler/error.hpp"
#include "finsler/oracle/dual.hpp"

namespace finsler::oracle {

namespace {

long double signed_power(long double base, Rational exponent) {
  const long double magnitude = std::pow(std::fabs(base), static_cast<long double>(exponent.num()) /
                                                              static_cast<long double>(exponent.den()));
  if (base < 0.0L) {
    if (exponent.den() % 2 == 0) return std::numeric_limits<long double>::quiet_NaN();
    if (exponent.num() % 2 != 0) return -magnitude;
  }
  return magnitude;
}

// Central-difference stencil for the mixed derivative along `tuple` with step h.
long double central_stencil(const ScalarField& f, std::span<const long double> y0,
                            std::span<const int> tuple, long double h) {
  const std::size_t r = tuple.size();
  std::vector<long double> y(y0.begin(), y0.end());
  long double acc = 0.0L;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    long double sign = 1.0L;
    std::copy(y0.begin(), y0.end(), y.begin());
    for (std::size_t k = 0; k < r; ++k) {
      const bool minus = (mask >> k) & 1u;
      y[static_cast<std::size_t>(tuple[k])] += minus ? -h : h;
      if (minus) sign = -sign;
    }
    acc += sign * f(y);
  }
  return acc / std::pow(2.0L * h, static_cast<long double>(r));
}

template <int Depth>
struct Nested {
  using type = Dual<typename Nested<Depth - 1>::type>;
};
template <>
struct Nested<0> {
  using type = double;
};

template <int Depth>
typename Nested<Depth>::type seed(double value, std::span<const int> tuple, int var) {
  if constexpr (Depth == 0) {
    return value;
  } else {
    using Sub = typename Nested<Depth - 1>::type;
    const bool active = tuple[static_cast<std::size_t>(Depth - 1)] == var;
    return {seed<Depth - 1>(value, tuple, var), Sub(active ? 1.0 : 0.0)};
  }
}

template <int Depth>
double innermost(const typename Nested<Depth>::type& x) {
  if constexpr (Depth == 0) {
    return x;
  } else {
    return innermost<Depth - 1>(x.du);
  }
}

template <int Depth>
double dual_mixed(const PowerComposite& comp, const Direction& y, std::span<const int> tuple) {
  using D = typename Nested<Depth>::type;
  std::vector<D> vars;
  for (int k = 0; k < y.dim(); ++k) vars.push_back(seed<Depth>(y[k], tuple, k));
  const D a = comp.metric.evaluate<D>(std::span<const D>(vars));
  const double a0 = primal(a);
  if (a0 == 0.0) throw Error(ErrorCode::ZeroBase, "A(y) = 0");
  double sign = 1.0;
  if (a0 < 0.0) {
    if (comp.exponent.den() % 2 == 0) throw Error(ErrorCode::DegenerateDomain, "even root of negative A");
    if (comp.exponent.num() % 2 != 0) sign = -1.0;
  }
  const D powered = exp(log_abs(a) * comp.exponent.to_double()) * sign;
  return innermost<Depth>(powered);
}

}  // namespace

double OracleConfig::fd_step(const Direction& y, int order) const {
  return base_step * (1.0 + y.norm()) * std::pow(step_growth, order - 1);
}

FdEstimate fd_tensor_with_step(const ScalarField& f, const Direction& y, int order,
                               long double step, int levels) {
  if (order < 1 || order > 4) throw Error(ErrorCode::UnsupportedOrder, "fd_tensor supports orders 1..4");
  if (levels < 0) throw Error(ErrorCode::InvalidInput, "negative Richardson level count");
  const long double finest = step / std::pow(2.0L, static_cast<long double>(levels));
  const long double scale = 1.0L + static_cast<long double>(y.norm());
  if (!(finest > 1e4L * LDBL_EPSILON * scale)) {
    throw Error(ErrorCode::StepUnderflow, "finite-difference step below precision floor");
  }
  std::vector<long double> y0(y.components().begin(), y.components().end());
  Tensor value(y.dim(), order);
  Tensor indicator(y.dim(), order);
  const auto size = static_cast<std::size_t>(levels) + 1;
  for (const auto& tuple : sorted_tuples(y.dim(), order)) {
    // Neville-style tableau: table[k][j] eliminates the h^(2j) error term.
    std::vector<std::vector<long double>> table(size);
    long double h = step;
    for (std::size_t k = 0; k < size; ++k, h /= 2.0L) {
      table[k].push_back(central_stencil(f, y0, tuple, h));
      long double factor = 1.0L;
      for (std::size_t j = 1; j <= k; ++j) {
        factor *= 4.0L;
        table[k].push_back(table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0L));
      }
    }
    const long double best = table[size - 1][size - 1];
    const long double prev = size > 1 ? table[size - 2][size - 2] : best;
    fill_symmetric(value, tuple, static_cast<double>(best));
    fill_symmetric(indicator, tuple, static_cast<double>(std::fabs(best - prev)));
  }
  return {std::move(value), std::move(indicator)};
}

FdEstimate fd_tensor(const ScalarField& f, const Direction& y, int order, const OracleConfig& config) {
  if (!(config.base_step > 0.0) || config.richardson_levels < 1 || config.step_candidates < 1) {
    throw Error(ErrorCode::InvalidInput, "oracle config needs base_step > 0 and >= 1 Richardson level");
  }
  // Ladder of first steps halving from twice the nominal one. Per entry, keep the
  // candidate whose error estimate is smallest, where the estimate is the
  // largest of its own extrapolation indicator and its distances to the
  // neighbouring steps' values: truncation shows up at large steps, rounding
  // noise at small ones.
  const long double nominal = config.fd_step(y, order);
  std::vector<FdEstimate> ladder;
  for (int j = 0; j < config.step_candidates; ++j) {
    const long double step = nominal * std::pow(2.0L, static_cast<long double>(1 - j));
    try {
      ladder.push_back(fd_tensor_with_step(f, y, order, step, config.richardson_levels));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::StepUnderflow && !ladder.empty()) break;
      throw;
    }
  }
  FdEstimate best = ladder.front();
  std::vector<double> best_err(best.value.size(), std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < ladder.size(); ++j) {
    const auto& cand = ladder[j];
    for (std::size_t i = 0; i < cand.value.size(); ++i) {
      double err = cand.error_indicator[i];
      if (j + 1 < ladder.size()) err = std::max(err, std::abs(cand.value[i] - ladder[j + 1].value[i]));
      if (j > 0) err = std::max(err, std::abs(cand.value[i] - ladder[j - 1].value[i]));
      if (std::isfinite(cand.value[i]) && err < best_err[i]) {
        best_err[i] = err;
        best.value[i] = cand.value[i];
        best.error_indicator[i] = err;
      }
    }
  }
  return best;
}

ScalarField power_field(const LinearFormsMetric& metric, Rational exponent) {
  return [metric, exponent](std::span<const long double> y) {
    return signed_power(metric.product(y), exponent);
  };
}

ScalarField power_field(const PolynomialMetric& metric, Rational exponent) {
  return [metric, exponent](std::span<const long double> y) {
    return signed_power(metric.evaluate<long double>(y), exponent);
  };
}

Tensor dual_tensor(const PowerComposite& comp, const Direction& y, int order) {
  if (y.dim() != comp.metric.dim()) throw Error(ErrorCode::DimensionMismatch, "direction vs metric");
  if (order < 0 || order > 4) throw Error(ErrorCode::UnsupportedOrder, "dual_tensor supports orders 0..4");
  Tensor out(y.dim(), order);
  for (const auto& tuple : sorted_tuples(y.dim(), order)) {
    double v = 0.0;
    switch (order) {
      case 0: v = dual_mixed<0>(comp, y, tuple); break;
      case 1: v = dual_mixed<1>(comp, y, tuple); break;
      case 2: v = dual_mixed<2>(comp, y, tuple); break;
      case 3: v = dual_mixed<3>(comp, y, tuple); break;
      default: v = dual_mixed<4>(comp, y, tuple); break;
    }
    fill_symmetric(out, tuple, v);
  }
  return out;
}

double dual_value(const PowerComposite& composite, const Direction& y) {
  return dual_tensor(composite, y, 0)[0];
}

std::string to_string(Method m) {
  switch (m) {
    case Method::FiniteDifference: return "FiniteDifference";
    case Method::DualNumber: return "DualNumber";
    case Method::CrossPath: return "CrossPath";
    case Method::Invariant: return "Invariant";
  }
  return "Unknown";
}

ComparisonReport compare(const Tensor& analytic, const Tensor& oracle, double tolerance,
                         Method method, double near_zero) {
  if (!analytic.same_shape(oracle)) throw Error(ErrorCode::ShapeMismatch, "compare");
  ComparisonReport report;
  report.method = method;
  report.tolerance = tolerance;
  const double floor = near_zero * (1.0 + oracle.norm());
  std::size_t worst = 0;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const double err = std::abs(analytic[i] - oracle[i]);
    const double ref = std::abs(oracle[i]);
    double allowed = floor;
    if (ref > floor) {
      report.max_rel_error = std::max(report.max_rel_error, err / ref);
      allowed = std::max(tolerance * ref, floor);
    }
    report.max_abs_error = std::max(report.max_abs_error, err);
    double ratio = 0.0;
    if (!(err <= 0.0)) ratio = allowed > 0.0 ? err / allowed : std::numeric_limits<double>::infinity();
    if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      worst = i;
    }
  }
  report.worst_index = oracle.multi_index(worst);
  report.pass = report.worst_ratio <= 1.0;
  return report;
}

void merge_into(ComparisonReport& acc, const ComparisonReport& next) {
  const bool pass = acc.pass && next.pass;
  const double max_abs = std::max(acc.max_abs_error, next.max_abs_error);
  const double max_rel = std::max(acc.max_rel_error, next.max_rel_error);
  if (next.worst_ratio > acc.worst_ratio || acc.worst_index.empty()) {
    acc.worst_index = next.worst_index;
    acc.worst_ratio = next.worst_ratio;
  }
  acc.method = next.method;
  acc.tolerance = next.tolerance;
  acc.pass = pass;
  acc.max_abs_error = max_abs;
  acc.max_rel_error = max_rel;
}

std::array<double, 3> fit_cubic_chain_classes(const Tensor& tensor, const DerivativeBundle& bundle,
                                              Rational exponent) {
  const int n = bundle.dim();
  if (tensor.order() != 3 || tensor.dim() != n) throw Error(ErrorCode::ShapeMismatch, "fit_cubic_chain_classes");
  const long double a = bundle.a0;
  const double w1 = static_cast<double>(signed_power(a, exponent - Rational(1)));
  const double w2 = static_cast<double>(signed_power(a, exponent - Rational(2)));
  const double w3 = static_cast<double>(signed_power(a, exponent - Rational(3)));
  const auto rows = static_cast<Eigen::Index>(tensor.size());
  Eigen::MatrixXd basis(rows, 3);
  Eigen::VectorXd rhs(rows);
  Eigen::Index row = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m, ++row) {
        basis(row, 0) = w1 * bundle.a3(j, k, m);
        basis(row, 1) = w2 * (bundle.a2(j, k) * bundle.a1(m) + bundle.a2(k, m) * bundle.a1(j) +
                              bundle.a2(m, j) * bundle.a1(k));
        basis(row, 2) = w3 * bundle.a1(j) * bundle.a1(k) * bundle.a1(m);
        rhs(row) = tensor(j, k, m);
      }
  const Eigen::Vector3d w = basis.colPivHouseholderQr().solve(rhs);
  return {w(0), w(1), w(2)};
}

}  // namespace finsler::oracle
