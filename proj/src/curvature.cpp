#include "finsler/curvature.hpp"

#include "finsler/error.hpp"

namespace finsler {

namespace {

// dC^l_ij/dy^k as an order-4 tensor in (l, i, j, k) layout.
Tensor mixed_torsion_gradient(const GeometryPoint& p) {
  const int n = p.y.dim();
  // h^l_vk = g^lu C_uvk, then dg^lm/dy^k = -2 h^l_vk g^vm.
  Tensor h(n, 3);
  for (int l = 0; l < n; ++l)
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int u = 0; u < n; ++u) acc += p.g_inv(l, u) * p.c_cov(u, v, k);
        h(l, v, k) = acc;
      }
  Tensor dginv(n, 3);  // (l, m, k)
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int v = 0; v < n; ++v) acc += h(l, v, k) * p.g_inv(v, m);
        dginv(l, m, k) = -2.0 * acc;
      }
  Tensor out(n, 4);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) {
            acc += dginv(l, m, k) * p.c_cov(i, j, m) + p.g_inv(l, m) * p.c_grad(i, j, m, k);
          }
          out(l, i, j, k) = acc;
        }
  return out;
}

}  // namespace

Tensor vertical_curvature_mixed(const GeometryPoint& p) {
  const int n = p.y.dim();
  const Tensor dc = mixed_torsion_gradient(p);
  const Tensor& cm = p.c_mixed;
  Tensor out(n, 4);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = dc(l, i, j, k) - dc(l, i, k, j);
          for (int u = 0; u < n; ++u) acc += cm(u, i, j) * cm(l, u, k) - cm(u, i, k) * cm(l, u, j);
          out(l, i, j, k) = acc;
        }
  return out;
}

Tensor vertical_curvature_mixed(const PolynomialMetric& metric, const Direction& y) {
  return vertical_curvature_mixed(evaluate_geometry(metric, y));
}

Tensor vertical_curvature_cov(const GeometryPoint& p) {
  const int n = p.y.dim();
  const Tensor& c = p.c_cov;
  Tensor gc(n, 3);  // gc(v, j, m) = g^vu C_ujm
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int u = 0; u < n; ++u) acc += p.g_inv(v, u) * c(u, j, m);
        gc(v, j, m) = acc;
      }
  Tensor out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int v = 0; v < n; ++v) acc += gc(v, j, m) * c(v, i, k) - gc(v, k, m) * c(v, i, j);
          out(i, m, j, k) = acc;
        }
  return out;
}

Tensor vertical_curvature_cov(const PolynomialMetric& metric, const Direction& y) {
  return vertical_curvature_cov(evaluate_geometry(metric, y));
}

Tensor lower_curvature(const Tensor& g, const Tensor& s_mixed) {
  const int n = g.dim();
  if (s_mixed.order() != 4 || s_mixed.dim() != n) throw Error(ErrorCode::ShapeMismatch, "lower_curvature");
  Tensor out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += g(m, l) * s_mixed(l, i, j, k);
          out(i, m, j, k) = acc;
        }
  return out;
}

Tensor raise_curvature(const Tensor& g_inv, const Tensor& s_cov) {
  const int n = g_inv.dim();
  if (s_cov.order() != 4 || s_cov.dim() != n) throw Error(ErrorCode::ShapeMismatch, "raise_curvature");
  Tensor out(n, 4);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += g_inv(l, m) * s_cov(i, m, j, k);
          out(l, i, j, k) = acc;
        }
  return out;
}

Tensor ricci(const Tensor& s_mixed) {
  const int n = s_mixed.dim();
  if (s_mixed.order() != 4) throw Error(ErrorCode::ShapeMismatch, "ricci expects an order-4 tensor");
  Tensor out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m) acc += s_mixed(m, i, j, m);
      out(i, j) = acc;
    }
  return out;
}

double scalar_curvature(const Tensor& ricci, const Tensor& g_inv) {
  if (!ricci.same_shape(g_inv)) throw Error(ErrorCode::ShapeMismatch, "scalar_curvature");
  double s = 0.0;
  for (std::size_t i = 0; i < ricci.size(); ++i) s += g_inv[i] * ricci[i];
  return s;
}

EinsteinResidual einstein_residual(const Tensor& ricci, double scalar, const Tensor& g,
                                   const Tensor& g_inv, double kappa) {
  const int n = g.dim();
  if (n <= 2) {
    throw Error(ErrorCode::NotApplicableDimension, "Einstein-like equations need n > 2");
  }
  if (kappa == 0.0) throw Error(ErrorCode::ZeroKappa, "kappa must be nonzero");
  Tensor e = ricci - (0.5 * scalar) * g;
  Tensor t = e * (1.0 / kappa);
  double trace = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) trace += g_inv[i] * e[i];
  const double defect = trace - scalar * (1.0 - 0.5 * n);
  return {std::move(e), kappa, std::move(t), defect};
}

ConnectionBundle nonlinear_connection(const PolynomialMetric& metric, const Direction& y) {
  if (y.dim() != metric.dim()) throw Error(ErrorCode::DimensionMismatch, "direction vs metric");
  // The spray is built from x- and t-derivatives of L^2 only; both vanish
  // for a metric that depends on y alone.
  return {std::vector<double>(static_cast<std::size_t>(metric.dim()), 0.0), Tensor(metric.dim(), 2)};
}

CurvatureBundle evaluate_curvature(const GeometryPoint& point, const CurvatureOptions& options) {
  Tensor s_cov = vertical_curvature_cov(point);
  Tensor s_mixed = options.definitional ? vertical_curvature_mixed(point)
                                        : raise_curvature(point.g_inv, s_cov);
  Tensor r = ricci(s_mixed);
  const double s = scalar_curvature(r, point.g_inv);
  std::optional<Tensor> e;
  if (point.y.dim() > 2) e = r - (0.5 * s) * point.g;
  return {point.y, std::move(s_mixed), std::move(s_cov), std::move(r), s, std::move(e),
          options.definitional};
}

}  // namespace finsler
