#include <gtest/gtest.h>

#include "finsler/error.hpp"
#include "finsler/linalg.hpp"
#include "finsler/power.hpp"
#include "support.hpp"

using namespace finsler;
using testing_support::rel_err;
using testing_support::tensor_rel;

#define EXPECT_CODE(stmt, expected)              \
  try {                                          \
    stmt;                                        \
    ADD_FAILURE() << "no exception: " #stmt;     \
  } catch (const Error& e) {                     \
    EXPECT_EQ(e.code(), expected) << e.what();   \
  }

namespace {

/// g by the two-term chain rule written out directly.
Tensor chain_rule_g(const DerivativeBundle& b, double p) {
  const int n = b.dim();
  Tensor g(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = 0.5 * (p * std::pow(std::abs(b.a0), p - 1) * b.a2(i, j) +
                       p * (p - 1) * std::pow(std::abs(b.a0), p - 2) * b.a1(i) * b.a1(j));
  return g;
}

PolynomialMetric euclidean3() { return PolynomialMetric(3, 2, {{{0, 0}, 1.0}, {{1, 1}, 1.0}, {{2, 2}, 1.0}}); }

}  // namespace

TEST(RealPower, OddRootConvention) {
  EXPECT_DOUBLE_EQ(real_power(-8.0, Rational(1, 3)), -2.0);
  EXPECT_DOUBLE_EQ(real_power(-8.0, Rational(2, 3)), 4.0);
  EXPECT_DOUBLE_EQ(real_power(-8.0, Rational(-1, 3)), -0.5);
  EXPECT_DOUBLE_EQ(real_power(9.0, Rational(1, 2)), 3.0);
  EXPECT_CODE(real_power(-4.0, Rational(1, 2)), ErrorCode::DegenerateDomain);
  EXPECT_CODE(real_power(0.0, Rational(2, 3)), ErrorCode::ZeroBase);
}

TEST(SetPartitions, BellNumbers) {
  const std::size_t bell[] = {1, 1, 2, 5, 15};
  for (int r = 0; r <= 4; ++r) EXPECT_EQ(set_partitions(r).size(), bell[r]);
  EXPECT_CODE(set_partitions(5), ErrorCode::UnsupportedOrder);
}

TEST(PartitionWeights, ExactFallingFactorials) {
  const auto w = partition_weights(Rational(2, 3), 3);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[1], Rational(2, 3));
  EXPECT_EQ(w[2], Rational(-2, 9));
  EXPECT_EQ(w[3], Rational(8, 27));
}

TEST(PowerDerivative, OrderZeroIsThePower) {
  const auto b = derivative_bundle(make_bg3(), Direction({3, 1, 1}));
  const Tensor t = power_derivative({b, Rational(2, 3), 0});
  EXPECT_LE(rel_err(t[0], std::cbrt(81.0)), 1e-15);
}

TEST(PowerDerivative, ZeroBaseAndOrderErrors) {
  const auto b = derivative_bundle(make_bg3(), Direction({1, 2, 3}));
  EXPECT_CODE(power_derivative({b, Rational(2, 3), 2}), ErrorCode::ZeroBase);
  const auto ok = derivative_bundle(make_bg3(), Direction({3, 1, 1}));
  EXPECT_CODE(power_derivative({ok, Rational(2, 3), 5}), ErrorCode::UnsupportedOrder);
}

TEST(FundamentalTensor, MatchesChainRuleAtThreeOneOne) {
  const auto b = derivative_bundle(make_bg3(), Direction({3, 1, 1}));
  EXPECT_LE(tensor_rel(fundamental_tensor(b), chain_rule_g(b, 2.0 / 3.0)), 1e-14);
}

TEST(FundamentalTensor, EuclideanIsIdentityWithZeroTorsion) {
  const Direction y({0.3, -1.2, 2.0});
  const auto gp = evaluate_geometry(euclidean3(), y);
  EXPECT_LE(max_abs_diff(gp.g, identity(3)), 1e-15);
  EXPECT_LE(max_abs_diff(gp.g_inv, identity(3)), 1e-15);
  EXPECT_LE(gp.c_cov.max_abs(), 1e-15);
  EXPECT_LE(gp.c_grad.max_abs(), 1e-15);
}

TEST(FundamentalTensor, RefusesDegenerateAndOutOfDomainPoints) {
  EXPECT_CODE(fundamental_tensor(make_bg3(), Direction({1, 2, 3})), ErrorCode::DegenerateDomain);
  EXPECT_CODE(fundamental_tensor(make_bg4(), Direction({1, 1, 1, 1})), ErrorCode::DegenerateDomain);
  EXPECT_CODE(evaluate_geometry(make_bg4(), Direction({1, 1, 1, 1})), ErrorCode::DegenerateDomain);
}

TEST(FundamentalTensor, NegativeAUsesOddRoot) {
  // L^2 = A^{2/3} is even in y, so g(-y) = g(y).
  const Direction y({3, 1, 1});
  const auto g1 = fundamental_tensor(make_bg3(), y);
  const auto g2 = fundamental_tensor(make_bg3(), y.scaled(-1.0));
  EXPECT_LE(max_abs_diff(g1, g2), 1e-15);
}

TEST(RankOneSplit, ReassemblesG) {
  const auto b = derivative_bundle(make_bg4(), Direction({4, 1, 1, 1}));
  const auto s = rank_one_split(b);
  Tensor g = s.alpha * s.b;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) += s.beta * s.a[static_cast<std::size_t>(i)] * s.a[static_cast<std::size_t>(j)];
  EXPECT_LE(tensor_rel(g, fundamental_tensor(b)), 1e-14);
  EXPECT_DOUBLE_EQ(s.alpha, std::pow(125.0, -0.5) / 4.0);
}

TEST(Inverse, RankOneAgreesWithDirectAndIdentityHolds) {
  for (const auto& poly : {make_bg3(), make_bg4()}) {
    for (const auto& y : sample_regular_points(poly, 100, 21)) {
      const auto b = derivative_bundle(poly, y);
      const Tensor g = fundamental_tensor(b);
      const auto r = inverse_fundamental_tensor(b, g);
      EXPECT_EQ(r.path, InversePath::RankOne);
      EXPECT_LE(max_abs_diff(matmul(g, r.g_inv), identity(g.dim())), 1e-9);
      EXPECT_LE(tensor_rel(r.g_inv, invert_direct(g)), 1e-10);
      EXPECT_EQ(r.g_inv.symmetry_defect(), 0.0);
    }
  }
}

TEST(Inverse, FallsBackToDirectWhenDenominatorIsFlagged) {
  const auto b = derivative_bundle(make_bg3(), Direction({3, 1, 1}));
  const Tensor g = fundamental_tensor(b);
  InverseOptions opts;
  opts.denominator_tolerance = 2.0;  // every denominator counts as degenerate
  const auto r = inverse_fundamental_tensor(b, g, opts);
  EXPECT_EQ(r.path, InversePath::Direct);
  EXPECT_LE(max_abs_diff(matmul(g, r.g_inv), identity(3)), 1e-12);
}

TEST(Inverse, SingularMatrixIsRejected) {
  Tensor s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = s(1, 0) = 1.0;
  s(1, 1) = 1.0;
  EXPECT_CODE(invert_direct(s), ErrorCode::SingularMetric);
  EXPECT_GT(condition_number(s), 1e12);
}

TEST(Torsion, SymmetricAndAnnihilatesY) {
  for (const auto& poly : {make_bg3(), make_bg4()}) {
    for (const auto& y : sample_regular_points(poly, 100, 4)) {
      const auto gp = evaluate_geometry(poly, y);
      EXPECT_EQ(gp.c_cov.symmetry_defect(), 0.0);
      EXPECT_EQ(gp.c_grad.symmetry_defect(), 0.0);
      const Tensor cy = contract_last(gp.c_cov, y.components());
      EXPECT_LE(cy.max_abs(), 1e-10 * gp.c_cov.norm() * y.norm());
      // dC_jkm/dy^n y^n = -C_jkm.
      const Tensor gy = contract_last(gp.c_grad, y.components());
      EXPECT_LE(max_abs_diff(gy, -1.0 * gp.c_cov), 1e-10 * gp.c_cov.norm());
    }
  }
}

TEST(Torsion, Bg3CubicClassCoefficientIsTwoTwentySevenths) {
  // C = A^{-1/3}/6 A_jkm - A^{-4/3}/18 (A_jk A_m + ...) + 2/27 A^{-7/3} A_j A_k A_m.
  const auto b = derivative_bundle(make_bg3(), Direction({3, 1.5, -0.5}));
  const double a = b.a0;
  Tensor expected(3, 3);
  for_each_index(3, 3, [&](std::span<const int> i) {
    const int j = i[0], k = i[1], m = i[2];
    expected.at(i) = std::cbrt(1 / a) / 6 * b.a3(j, k, m) -
                     std::pow(std::cbrt(a), -4) / 18 * (b.a2(j, k) * b.a1(m) + b.a2(k, m) * b.a1(j) + b.a2(m, j) * b.a1(k)) +
                     2.0 / 27 * std::pow(std::cbrt(a), -7) * b.a1(j) * b.a1(k) * b.a1(m);
  });
  EXPECT_LE(tensor_rel(cartan_torsion(b), expected), 1e-14);
}

TEST(Torsion, MixedRaisesFirstSlot) {
  const auto gp = evaluate_geometry(make_bg3(), Direction({3, 1, 1}));
  const Tensor lowered = [&] {
    Tensor t(3, 3);
    for_each_index(3, 3, [&](std::span<const int> i) {
      for (int l = 0; l < 3; ++l) t.at(i) += gp.g(i[0], l) * gp.c_mixed(l, i[1], i[2]);
    });
    return t;
  }();
  EXPECT_LE(tensor_rel(lowered, gp.c_cov), 1e-13);
}

TEST(Geometry, EulerIdentityAndHomogeneity) {
  for (const auto& poly : {make_bg3(), make_bg4()}) {
    const double p = 2.0 / poly.degree();
    for (const auto& y : sample_regular_points(poly, 100, 9)) {
      const auto gp = evaluate_geometry(poly, y);
      double q = 0.0;
      for (int i = 0; i < y.dim(); ++i)
        for (int j = 0; j < y.dim(); ++j) q += gp.g(i, j) * y[i] * y[j];
      EXPECT_LE(rel_err(q, std::pow(std::abs(gp.a_value), p)), 1e-10);
      for (double lambda : {0.5, 2.0}) {
        const auto gl = evaluate_geometry(poly, y.scaled(lambda));
        EXPECT_LE(rel_err(gl.l_value, lambda * gp.l_value), 1e-10);
        EXPECT_LE(tensor_rel(gl.g, gp.g), 1e-10);
        EXPECT_LE(tensor_rel(gl.c_cov, (1 / lambda) * gp.c_cov), 1e-10);
        EXPECT_LE(tensor_rel(gl.c_grad, (1 / (lambda * lambda)) * gp.c_grad), 1e-10);
      }
    }
  }
}

TEST(Geometry, ReportsConditionAndPath) {
  const auto gp = evaluate_geometry(make_bg3(), Direction({3, 1, 1}));
  EXPECT_NEAR(gp.cond, condition_number(gp.g), 1e-12);
  EXPECT_EQ(gp.inverse_path, InversePath::RankOne);
  EXPECT_LE(rel_err(gp.l_value, std::cbrt(9.0)), 1e-15);
  EXPECT_LE(rel_err(determinant(gp.g), 16.0 / 27.0), 1e-13);
}
