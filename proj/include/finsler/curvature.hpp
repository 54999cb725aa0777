#pragma once

#include <optional>

#include "finsler/metric.hpp"
#include "finsler/power.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Vertical curvature objects at one direction.
///
/// Index layout: s_mixed(l, i, j, k) = S^l_ijk and s_cov(i, m, j, k) = S_imjk.
/// Both are antisymmetric in (j, k); s_cov is also pair-exchange symmetric.
struct CurvatureBundle {
  Direction y;
  Tensor s_mixed;
  Tensor s_cov;
  Tensor ricci;
  double scalar;
  /// S_ij - (S/2) g_ij; absent for n <= 2 where the field equations do not apply.
  std::optional<Tensor> einstein;
  /// True when s_mixed came from the definitional (torsion-gradient) path
  /// rather than raising s_cov.
  bool definitional;
};

struct EinsteinResidual {
  Tensor einstein;
  double kappa;
  Tensor stress_energy;
  /// g^ij E_ij - S (1 - n/2); zero up to rounding.
  double trace_defect;
};

/// Zero spray G^i and connection N^i_j of a y-only metric.
struct ConnectionBundle {
  std::vector<double> spray;
  Tensor connection;
};

/// S^l_ijk = dC^l_ij/dy^k - dC^l_ik/dy^j + C^u_ij C^l_uk - C^u_ik C^l_uj, with
/// dC^l_ij/dy^k = -2 g^lu g^mv C_uvk C_ijm + g^lm dC_ijm/dy^k.
Tensor vertical_curvature_mixed(const GeometryPoint& point);
Tensor vertical_curvature_mixed(const PolynomialMetric& metric, const Direction& y);

/// S_imjk = g^uv (C_ujm C_vik - C_ukm C_vij).
Tensor vertical_curvature_cov(const GeometryPoint& point);
Tensor vertical_curvature_cov(const PolynomialMetric& metric, const Direction& y);

/// g_ml S^l_ijk rearranged to the S_imjk layout.
Tensor lower_curvature(const Tensor& g, const Tensor& s_mixed);
/// g^lm S_imjk rearranged to the S^l_ijk layout.
Tensor raise_curvature(const Tensor& g_inv, const Tensor& s_cov);

/// S_ij = S^m_ijm.
Tensor ricci(const Tensor& s_mixed);

/// S = g^uv S_uv.
double scalar_curvature(const Tensor& ricci, const Tensor& g_inv);

/// E_ij = S_ij - (S/2) g_ij and T_ij = E_ij / kappa. Throws ZeroKappa or,
/// for n <= 2, NotApplicableDimension.
EinsteinResidual einstein_residual(const Tensor& ricci, double scalar, const Tensor& g,
                                   const Tensor& g_inv, double kappa);

ConnectionBundle nonlinear_connection(const PolynomialMetric& metric, const Direction& y);

struct CurvatureOptions {
  /// Compute s_mixed through the torsion gradient instead of raising s_cov.
  bool definitional = true;
};

CurvatureBundle evaluate_curvature(const GeometryPoint& point, const CurvatureOptions& options = {});

}  // namespace finsler
