#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/rational.hpp"
#include "finsler/tensor.hpp"

namespace finsler::oracle {

/// Scalar function of y evaluated in extended precision; the FD oracle only
/// ever calls it, never differentiates it.
using ScalarField = std::function<long double(std::span<const long double>)>;

struct OracleConfig {
  /// FD step relative to (1 + |y|) for first derivatives.
  double base_step = 1e-3;
  /// Each further derivative order multiplies the step by this factor.
  double step_growth = 2.0;
  int richardson_levels = 3;
  /// Number of first steps tried, halving from twice the nominal step; each
  /// entry keeps the candidate with the smallest error estimate.
  int step_candidates = 8;
  /// Relative FD tolerances for derivative orders 1..4 (index 0 unused).
  std::array<double, 5> fd_tolerance{0.0, 1e-8, 1e-7, 1e-5, 1e-4};
  double dual_tolerance = 1e-10;
  /// Entries with |oracle| below near_zero * (1 + ||oracle||) are compared
  /// against that absolute floor instead of relatively.
  double near_zero = 1e-10;

  double fd_step(const Direction& y, int order) const;
};

struct FdEstimate {
  Tensor value;
  /// |last extrapolation - previous level| entry-wise.
  Tensor error_indicator;
};

/// Central-difference estimate of the order-r derivative tensor of f at y,
/// Richardson-extrapolated over halving steps, with per-entry step selection.
FdEstimate fd_tensor(const ScalarField& f, const Direction& y, int order,
                     const OracleConfig& config = {});

/// Same stencil with an explicit first step and number of levels; level 0 is
/// the plain central difference.
FdEstimate fd_tensor_with_step(const ScalarField& f, const Direction& y, int order,
                               long double step, int levels);

/// sign-aware |A|^p built from the factored product of linear forms.
ScalarField power_field(const LinearFormsMetric& metric, Rational exponent);
/// The same from the expanded polynomial.
ScalarField power_field(const PolynomialMetric& metric, Rational exponent);

/// A^p with p rational; the dual oracle differentiates this composite.
struct PowerComposite {
  const PolynomialMetric& metric;
  Rational exponent;
};

/// Mixed derivatives of A^p by nested dual numbers, evaluated through
/// exp(p log|A|). Shares no code with the partition-sum path.
Tensor dual_tensor(const PowerComposite& composite, const Direction& y, int order);

/// Scalar value of the composite (order 0).
double dual_value(const PowerComposite& composite, const Direction& y);

enum class Method { FiniteDifference, DualNumber, CrossPath, Invariant };

std::string to_string(Method m);

struct ComparisonReport {
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::vector<int> worst_index;
  bool pass = true;
  Method method = Method::CrossPath;
  double tolerance = 0.0;
  /// Largest error / allowed-error ratio; <= 1 iff pass.
  double worst_ratio = 0.0;
};

/// Entry-wise hybrid comparison: an entry passes when
/// |a - o| <= tolerance |o|, or, for near-zero oracle entries,
/// |a - o| <= near_zero (1 + ||o||_F).
ComparisonReport compare(const Tensor& analytic, const Tensor& oracle, double tolerance,
                         Method method, double near_zero = 1e-10);

/// Keep the worse of two reports (by worst_ratio); pass is the conjunction.
void merge_into(ComparisonReport& acc, const ComparisonReport& next);

/// Least-squares weights of the order-3 chain-rule classes in `tensor`:
/// basis T1 = A^(p-1) A_jkm, T2 = A^(p-2) (A_jk A_m + A_km A_j + A_mj A_k),
/// T3 = A^(p-3) A_j A_k A_m. Returns {w1, w2, w3}.
std::array<double, 3> fit_cubic_chain_classes(const Tensor& tensor, const DerivativeBundle& bundle,
                                              Rational exponent);

}  // namespace finsler::oracle
