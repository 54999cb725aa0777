#include "finsler/oracle/fixtures.hpp"

#include <cmath>

#include "finsler/error.hpp"
#include "finsler/power.hpp"

namespace finsler::oracle {

namespace {

Tensor scalar(int n, double v) {
  Tensor t(n, 0);
  t[0] = v;
  return t;
}

// A^jk, A^j = A^jw A_w and s = A^uv A_u A_v from an inverse and a gradient.
struct InverseParts {
  Tensor raised;
  double s;
};

InverseParts raise_gradient(const Tensor& a_inv, const Tensor& a_i) {
  const int n = a_i.dim();
  Tensor up(n, 1);
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int w = 0; w < n; ++w) up(j) += a_inv(j, w) * a_i(w);
    s += up(j) * a_i(j);
  }
  return {up, s};
}

// alpha A_ij + beta A_i A_j
Tensor chain2(const Tensor& a_ij, const Tensor& a_i, double alpha, double beta) {
  const int n = a_i.dim();
  Tensor g(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = alpha * a_ij(i, j) + beta * a_i(i) * a_i(j);
  return g;
}

// w1 A_jkm + w2 (A_jk A_m + A_km A_j + A_mj A_k) + w3 A_j A_k A_m
Tensor chain3(const Tensor& a_jkm, const Tensor& a_ij, const Tensor& a_i, double w1, double w2, double w3) {
  const int n = a_i.dim();
  Tensor c(n, 3);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m)
        c(j, k, m) = w1 * a_jkm(j, k, m) +
                     w2 * (a_ij(j, k) * a_i(m) + a_ij(k, m) * a_i(j) + a_ij(m, j) * a_i(k)) +
                     w3 * a_i(j) * a_i(k) * a_i(m);
  return c;
}

// u A^jk + v A^j A^k
Tensor inverse_form(const Tensor& a_inv, const Tensor& up, double u, double v) {
  const int n = up.dim();
  Tensor g(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g(j, k) = u * a_inv(j, k) + v * up(j) * up(k);
  return g;
}

void require_off_hyperplanes(const Direction& y) {
  const double floor = 1e-12 * (1.0 + y.max_abs());
  for (double v : y.components()) {
    if (std::abs(v) <= floor) {
      throw Error(ErrorCode::HyperplaneSingularity, "printed formula divides by a zero component");
    }
  }
}

FixtureSet bg3_fixtures(const Direction& yv) {
  const int n = 3;
  const double y1 = yv[0], y2 = yv[1], y3 = yv[2];
  const double y[3] = {y1, y2, y3};
  const double s1 = power_sum(yv, 1), s2 = power_sum(yv, 2), s3 = power_sum(yv, 3);
  const double p3 = coordinate_product(yv);
  FixtureSet out;

  const double a = 2 * s3 - s1 * s2 + 2 * p3;
  out["A"] = {scalar(n, a), false, "2S_3 - S_1 S_2 + 2P_3"};

  Tensor a_i(n, 1);
  for (int i = 0; i < n; ++i) a_i(i) = 6 * y[i] * y[i] - s2 - 2 * y[i] * s1 + 2 * p3 / y[i];
  out["A_i"] = {a_i, false, "6(y^i)^2 - S_2 - 2y^i S_1 + 2P_3/y^i"};

  Tensor a_ij_formula(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a_ij_formula(i, j) = -2 * y[i] - 2 * y[j] + 2 * p3 / (y[i] * y[j]) +
                           (i == j ? 12 * y[i] - 2 * s1 - 2 * p3 / (y[i] * y[i]) : 0.0);
  out["A_ij_formula"] = {a_ij_formula, false, "closed form with P_3/(y^i y^j) terms"};

  Tensor a_ij(n, 2);
  const double m[3][3] = {{6 * y1 - 2 * y2 - 2 * y3, -2 * y1 - 2 * y2 + 2 * y3, -2 * y1 + 2 * y2 - 2 * y3},
                          {-2 * y1 - 2 * y2 + 2 * y3, -2 * y1 + 6 * y2 - 2 * y3, 2 * y1 - 2 * y2 - 2 * y3},
                          {-2 * y1 + 2 * y2 - 2 * y3, 2 * y1 - 2 * y2 - 2 * y3, -2 * y1 - 2 * y2 + 6 * y3}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a_ij(i, j) = m[i][j];
  out["A_ij_matrix"] = {a_ij, false, "printed (A_ij) matrix"};

  const double d = -8 * s3 + 4 * s1 * s2 - 8 * p3;
  out["D"] = {scalar(n, d), false, "D = -8S_3 + 4S_1S_2 - 8P_3"};
  out["det_A_ij"] = {scalar(n, -8 * d), false, "det(A_ij) = -8D"};

  Tensor star(n, 2);
  const double st[3][3] = {
      {2 * y2 * y2 - 4 * y2 * y3 + 2 * y3 * y3, s2 - 2 * y1 * y3 - 2 * y2 * y3, s2 - 2 * y1 * y2 - 2 * y2 * y3},
      {s2 - 2 * y1 * y3 - 2 * y2 * y3, 2 * y1 * y1 - 4 * y1 * y3 + 2 * y3 * y3, s2 - 2 * y1 * y2 - 2 * y1 * y3},
      {s2 - 2 * y1 * y2 - 2 * y2 * y3, s2 - 2 * y1 * y2 - 2 * y1 * y3, 2 * y1 * y1 - 4 * y1 * y2 + 2 * y2 * y2}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) star(i, j) = st[i][j];
  out["A_star"] = {star, false, "printed A*; (A^jk) = A*/D"};
  Tensor a_inv = star * (1.0 / d);
  out["A_inv"] = {a_inv, false, "A*/D"};

  Tensor compact(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      compact(j, k) = (s2 - 2 * (y[j] + y[k]) * p3 / (y[j] * y[k]) - (j == k ? y[j] * y[j] : 0.0)) / d;
  out["A_inv_compact"] = {compact, true, "compact A^jk formula; diagonal disagrees with A*/D"};

  Tensor a_jkm(n, 3);
  const double am[3][3][3] = {{{6, -2, -2}, {-2, -2, 2}, {-2, 2, -2}},
                              {{-2, -2, 2}, {-2, 6, -2}, {2, -2, -2}},
                              {{-2, 2, -2}, {2, -2, -2}, {-2, -2, 6}}};
  for (int mm = 0; mm < n; ++mm)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a_jkm(j, k, mm) = am[mm][j][k];
  out["A_jkm"] = {a_jkm, false, "printed A_(1), A_(2), A_(3)"};

  const Rational third(1, 3);
  out["g"] = {chain2(a_ij, a_i, real_power(a, -third) / 3.0, -real_power(a, Rational(-4, 3)) / 9.0), false,
              "A^{-1/3}/3 A_ij - A^{-4/3}/9 A_i A_j"};

  const auto parts = raise_gradient(a_inv, a_i);
  out["g_inv"] = {inverse_form(a_inv, parts.raised, 3.0 * real_power(a, third),
                               real_power(a, Rational(-2, 3)) / (1.0 - parts.s / (3.0 * a))),
                  false, "3A^{1/3}A^jk + A^{-2/3}/(1 - A^{-1}A^uv A_u A_v/3) A^j A^k"};

  out["C"] = {chain3(a_jkm, a_ij, a_i, real_power(a, -third) / 6.0, -real_power(a, Rational(-4, 3)) / 18.0,
                     -real_power(a, Rational(-7, 3)) / 18.0),
              true, "printed cubic-class coefficient -1/18; the chain rule gives +2/27"};
  return out;
}

FixtureSet bg4_fixtures(const Direction& yv) {
  const int n = 4;
  const double y1 = yv[0], y2 = yv[1], y3 = yv[2], y4 = yv[3];
  const double y[4] = {y1, y2, y3, y4};
  const double s2 = power_sum(yv, 2), s4 = power_sum(yv, 4);
  const double p4 = coordinate_product(yv);
  FixtureSet out;

  const double a_val = 2 * s4 - s2 * s2 - 8 * p4;
  out["A"] = {scalar(n, a_val), false, "2S_4 - S_2^2 - 8P_4"};

  Tensor a_i(n, 1);
  for (int i = 0; i < n; ++i) a_i(i) = 4 * y[i] * y[i] * y[i] - 4 * y[i] * (s2 - y[i] * y[i]) - 8 * p4 / y[i];
  out["A_i"] = {a_i, false, "4(y^i)^3 - 4y^i[S_2 - (y^i)^2] - 8P_4/y^i"};

  Tensor a_ij_formula(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a_ij_formula(i, j) = -8 * y[i] * y[j] - 8 * p4 / (y[i] * y[j]) +
                           (i == j ? 24 * y[i] * y[i] - 4 * s2 + 8 * p4 / (y[i] * y[i]) : 0.0);
  out["A_ij_formula"] = {a_ij_formula, false, "closed form with P_4/(y^i y^j) terms"};

  const double p = 12 * y1 * y1 - 4 * y2 * y2 - 4 * y3 * y3 - 4 * y4 * y4;
  const double q = -4 * y1 * y1 + 12 * y2 * y2 - 4 * y3 * y3 - 4 * y4 * y4;
  const double r = -4 * y1 * y1 - 4 * y2 * y2 + 12 * y3 * y3 - 4 * y4 * y4;
  const double s = -4 * y1 * y1 - 4 * y2 * y2 - 4 * y3 * y3 + 12 * y4 * y4;
  const double a = -8 * y1 * y2 - 8 * y3 * y4;
  const double b = -8 * y1 * y3 - 8 * y2 * y4;
  const double c = -8 * y1 * y4 - 8 * y2 * y3;
  out["p"] = {scalar(n, p), false, "12(y^1)^2 - 4(y^2)^2 - 4(y^3)^2 - 4(y^4)^2"};
  out["q"] = {scalar(n, q), false, ""};
  out["r"] = {scalar(n, r), false, ""};
  out["s"] = {scalar(n, s), false, ""};
  out["a"] = {scalar(n, a), false, "-8y^1y^2 - 8y^3y^4"};
  out["b"] = {scalar(n, b), false, "-8y^1y^3 - 8y^2y^4"};
  out["c"] = {scalar(n, c), false, "-8y^1y^4 - 8y^2y^3"};

  Tensor a_ij(n, 2);
  const double m[4][4] = {{p, a, b, c}, {a, q, c, b}, {b, c, r, a}, {c, b, a, s}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a_ij(i, j) = m[i][j];
  out["A_ij_matrix"] = {a_ij, false, "printed [[p,a,b,c],[a,q,c,b],[b,c,r,a],[c,b,a,s]]"};

  const double det = a * a * a * a - 2 * a * a * c * c - 2 * b * b * c * c - 2 * a * a * b * b + b * b * b * b +
                     c * c * c * c - a * a * p * q - b * b * p * r - a * a * r * s - b * b * q * s -
                     c * c * p * s - c * c * q * r + 2 * a * b * c * p + 2 * a * b * c * q + 2 * a * b * c * r +
                     2 * a * b * c * s + p * q * r * s;
  out["det_A_ij"] = {scalar(n, det), false, "printed determinant expansion D"};

  const double e11 = -q * a * a + 2 * a * b * c - r * b * b - s * c * c + q * r * s;
  const double e22 = -p * a * a + 2 * a * b * c - s * b * b - r * c * c + p * r * s;
  const double e33 = -s * a * a + 2 * a * b * c - p * b * b - q * c * c + p * q * s;
  const double e44 = -r * a * a + 2 * a * b * c - q * b * b - p * c * c + p * q * r;
  const double e12 = a * a * a - a * c * c - a * b * b + b * c * r + b * c * s - a * r * s;
  const double e13 = b * b * b - b * c * c - a * a * b + a * c * q + a * c * s - b * q * s;
  const double e14 = c * c * c - b * b * c - a * a * c + a * b * q + a * b * r - c * q * r;
  const double e23 = c * c * c - b * b * c - a * a * c + a * b * p + a * b * s - c * p * s;
  const double e24 = b * b * b - b * c * c - a * a * b + a * c * p + a * c * r - b * p * r;
  const double e34 = a * a * a - a * c * c - a * b * b + b * c * p + b * c * q - a * p * q;
  Tensor star(n, 2);
  const double st[4][4] = {{e11, e12, e13, e14}, {e12, e22, e23, e24}, {e13, e23, e33, e34}, {e14, e24, e34, e44}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) star(i, j) = st[i][j];
  out["A_star"] = {star, false, "printed adjugate A*"};
  Tensor a_inv = star * (1.0 / det);
  out["A_inv"] = {a_inv, false, "A*/D"};

  // A_(m)[j][k] = coefficient * y^{var}; 24 on the (m, m) slot, -8 elsewhere.
  const int var[4][4][4] = {{{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}},
                            {{2, 1, 4, 3}, {1, 2, 3, 4}, {4, 3, 2, 1}, {3, 4, 1, 2}},
                            {{3, 4, 1, 2}, {4, 3, 2, 1}, {1, 2, 3, 4}, {2, 1, 4, 3}},
                            {{4, 3, 2, 1}, {3, 4, 1, 2}, {2, 1, 4, 3}, {1, 2, 3, 4}}};
  Tensor a_jkm(n, 3);
  for (int mm = 0; mm < n; ++mm)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        a_jkm(j, k, mm) = (j == mm && k == mm ? 24.0 : -8.0) * y[var[mm][j][k] - 1];
  out["A_jkm"] = {a_jkm, false, "printed A_(1)..A_(4)"};

  const Rational half(1, 2);
  out["g"] = {chain2(a_ij, a_i, real_power(a_val, -half) / 4.0, -real_power(a_val, Rational(-3, 2)) / 8.0), false,
              "A^{-1/2}/4 A_ij - A^{-3/2}/8 A_i A_j"};

  const auto parts = raise_gradient(a_inv, a_i);
  out["g_inv"] = {inverse_form(a_inv, parts.raised, 4.0 * real_power(a_val, half),
                               real_power(a_val, -half) / (2.0 - parts.s / a_val)),
                  true, "printed rank-one factor A^{-1/2}/(2 - A^{-1}s); the derivation gives 4A^{-1/2}/(2 - A^{-1}s)"};

  out["C"] = {chain3(a_jkm, a_ij, a_i, real_power(a_val, -half) / 8.0, -real_power(a_val, Rational(-3, 2)) / 16.0,
                     3.0 * real_power(a_val, Rational(-5, 2)) / 32.0),
              false, "A^{-1/2}/8, -A^{-3/2}/16, 3A^{-5/2}/32"};
  return out;
}

}  // namespace

FixtureSet golden_fixtures(MetricTag tag, const Direction& y) {
  const int n = tag == MetricTag::BG3 ? 3 : 4;
  if (y.dim() != n) throw Error(ErrorCode::DimensionMismatch, "fixture dimension");
  require_off_hyperplanes(y);
  return tag == MetricTag::BG3 ? bg3_fixtures(y) : bg4_fixtures(y);
}

}  // namespace finsler::oracle
