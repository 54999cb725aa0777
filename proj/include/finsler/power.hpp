#pragma once

#include <optional>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/rational.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Real power with the odd-root convention: for base < 0 and an exponent
/// whose reduced denominator is odd, base^(k/d) = sign(base)^k |base|^(k/d).
/// Throws ZeroBase for base == 0 and DegenerateDomain for a negative base
/// under an even root.
double real_power(double base, Rational exponent);

/// Exponent of A in L^2 = A^(2/m).
inline Rational metric_exponent(int degree) { return Rational(2, degree); }

/// Set partitions of {0, ..., r-1}; each block lists positions in ascending
/// order. Sizes follow the Bell numbers 1, 1, 2, 5, 15 for r = 0..4.
using SetPartition = std::vector<std::vector<int>>;
const std::vector<SetPartition>& set_partitions(int r);

struct PowerDerivativeRequest {
  const DerivativeBundle& bundle;
  Rational exponent;
  int order;
};

/// d^r (A^p) as a symmetric order-r tensor:
///   sum over partitions pi of the r slots of  p^(|pi|) A^(p - |pi|) prod_{B in pi} A_B,
/// with the falling factorials p^(s) computed exactly.
Tensor power_derivative(const PowerDerivativeRequest& request);

/// Partition-class weights p^(s) for s = 0..order, in exact arithmetic.
std::vector<Rational> partition_weights(Rational exponent, int order);

/// Throws DegenerateDomain unless domain_status(metric, y) is usable.
DomainStatus require_usable_domain(const PolynomialMetric& metric, const Direction& y,
                                   std::optional<double> epsilon = std::nullopt);

/// g_ij = 1/2 d^2 L^2 / dy^i dy^j.
Tensor fundamental_tensor(const DerivativeBundle& bundle);
Tensor fundamental_tensor(const PolynomialMetric& metric, const Direction& y);

/// g = alpha B + beta a a^T with B = A_ij, a = A_i,
/// alpha = A^(2/m - 1) / m, beta = (1/m)(2/m - 1) A^(2/m - 2).
struct RankOneSplit {
  double alpha;
  double beta;
  Tensor b;
  std::vector<double> a;
};
RankOneSplit rank_one_split(const DerivativeBundle& bundle);

enum class InversePath { RankOne, Direct };

struct InverseOptions {
  /// Sherman-Morrison denominator |alpha + beta s| below this fraction of
  /// |alpha| + |beta s| triggers the direct fallback.
  double denominator_tolerance = 1e-10;
  double max_condition = 1e12;
};

struct InverseResult {
  Tensor g_inv;
  InversePath path;
  double condition;
};

/// Ratio of largest to smallest singular value.
double condition_number(const Tensor& matrix);

/// Dense inverse; throws SingularMetric above max_condition.
Tensor invert_direct(const Tensor& matrix, double max_condition = 1e12);

/// Sherman-Morrison inverse of the rank-one split; throws SingularMetric when
/// B is singular or the update denominator degenerates.
Tensor invert_rank_one(const DerivativeBundle& bundle, const InverseOptions& options = {});

/// Rank-one path with automatic fallback to direct inversion of g.
InverseResult inverse_fundamental_tensor(const DerivativeBundle& bundle, const Tensor& g,
                                         const InverseOptions& options = {});

/// C_jkm = 1/4 d^3 L^2 / dy^j dy^k dy^m.
Tensor cartan_torsion(const DerivativeBundle& bundle);
Tensor cartan_torsion(const PolynomialMetric& metric, const Direction& y);

/// C^i_jk = g^im C_mjk (index raised on the first slot).
Tensor mixed_torsion(const Tensor& g_inv, const Tensor& c_cov);

/// dC_jkm/dy^n = 1/4 d^4 L^2.
Tensor torsion_gradient(const DerivativeBundle& bundle);
Tensor torsion_gradient(const PolynomialMetric& metric, const Direction& y);

struct GeometryOptions {
  std::optional<double> domain_epsilon;
  InverseOptions inverse;
};

struct GeometryPoint {
  Direction y;
  DomainStatus status;
  double a_value;
  double l_value;
  Tensor g;
  Tensor g_inv;
  Tensor c_cov;
  Tensor c_mixed;
  Tensor c_grad;
  double cond;
  InversePath inverse_path;
};

/// Full vertical first-order geometry at y. Throws DegenerateDomain or
/// SingularMetric.
GeometryPoint evaluate_geometry(const PolynomialMetric& metric, const Direction& y,
                                const GeometryOptions& options = {});

}  // namespace finsler
