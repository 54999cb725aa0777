#include <gtest/gtest.h>

#include <map>

#include "finsler/error.hpp"
#include "finsler/metric.hpp"
#include "finsler/rational.hpp"
#include "support.hpp"

using namespace finsler;
using testing_support::rel_err;

#define EXPECT_CODE(stmt, expected)              \
  try {                                          \
    stmt;                                        \
    ADD_FAILURE() << "no exception: " #stmt;     \
  } catch (const Error& e) {                     \
    EXPECT_EQ(e.code(), expected) << e.what();   \
  }

namespace {

std::map<double, int> multiset(const PolynomialMetric& m) {
  std::map<double, int> out;
  for (const auto& t : m.terms()) ++out[t.coefficient];
  return out;
}

}  // namespace

TEST(Rational, ReducesAndKeepsDenominatorPositive) {
  Rational r(4, -6);
  EXPECT_EQ(r.num(), -2);
  EXPECT_EQ(r.den(), 3);
  EXPECT_EQ(Rational(2, 3) * Rational(-1, 3) * Rational(-4, 3) / Rational(4), Rational(2, 27));
  EXPECT_EQ(falling_factorial(Rational(2, 3), 3), Rational(8, 27));
  EXPECT_EQ(falling_factorial(Rational(1, 2), 0), Rational(1));
}

TEST(Tensor, IndexingIsRowMajor) {
  Tensor t(3, 2);
  t(1, 2) = 5.0;
  EXPECT_EQ(t[5], 5.0);
  EXPECT_EQ(t.multi_index(5), (std::vector<int>{1, 2}));
  EXPECT_EQ(t.flat_index(std::vector<int>{1, 2}), 5u);
}

TEST(Tensor, SymmetryDefectAndNorms) {
  Tensor t(2, 2);
  t(0, 1) = 3.0;
  t(1, 0) = -1.0;
  EXPECT_DOUBLE_EQ(t.symmetry_defect(), 4.0);
  EXPECT_DOUBLE_EQ(t.max_abs(), 3.0);
  EXPECT_DOUBLE_EQ(t.norm(), std::sqrt(10.0));
  EXPECT_EQ(sorted_tuples(3, 2).size(), 6u);
  EXPECT_EQ(sorted_tuples(4, 4).size(), 35u);
}

TEST(Direction, RejectsNonFiniteComponents) {
  EXPECT_CODE(Direction(std::vector<double>{1.0, NAN, 2.0}), ErrorCode::NonFiniteInput);
  EXPECT_CODE(Direction(std::vector<double>{INFINITY, 0.0}), ErrorCode::NonFiniteInput);
}

TEST(Builtins, Bg3HasTenTermsWithExpectedCoefficients) {
  const auto m = make_bg3();
  EXPECT_EQ(m.dim(), 3);
  EXPECT_EQ(m.degree(), 3);
  EXPECT_EQ(m.terms().size(), 10u);
  EXPECT_EQ(multiset(m), (std::map<double, int>{{1.0, 3}, {-1.0, 6}, {2.0, 1}}));
  EXPECT_EQ(m.coefficient({0, 1, 2}), 2.0);
  EXPECT_EQ(m.coefficient({1, 0, 0}), -1.0);
}

TEST(Builtins, Bg4HasCoefficientClassesOneMinusTwoMinusEight) {
  const auto m = make_bg4();
  EXPECT_EQ(m.terms().size(), 11u);
  EXPECT_EQ(multiset(m), (std::map<double, int>{{1.0, 4}, {-2.0, 6}, {-8.0, 1}}));
}

TEST(Builtins, ExpandedFormsMatchLiteralSums) {
  for (auto [forms, poly] : {std::pair{bg3_forms(), make_bg3()}, std::pair{bg4_forms(), make_bg4()}}) {
    const auto e = expand(forms);
    ASSERT_EQ(e.terms().size(), poly.terms().size());
    for (std::size_t i = 0; i < e.terms().size(); ++i) {
      EXPECT_EQ(e.terms()[i].idx, poly.terms()[i].idx);
      EXPECT_EQ(e.terms()[i].coefficient, poly.terms()[i].coefficient);
    }
  }
}

TEST(Builtins, FactoredAndExpandedAgreeOnRandomPoints) {
  for (auto [forms, poly] : {std::pair{bg3_forms(), make_bg3()}, std::pair{bg4_forms(), make_bg4()}}) {
    for (const auto& y : sample_box(poly.dim(), 500, 11)) {
      double scale = 0.0;
      for (const auto& t : poly.terms()) {
        double mono = std::abs(t.coefficient);
        for (int v : t.idx) mono *= std::abs(y[v]);
        scale += mono;
      }
      EXPECT_LE(std::abs(forms(y) - eval(poly, y)), 1e-12 * scale);
    }
  }
}

TEST(ProductMetric, IdentityFormsExpandToSingleTerm) {
  const auto m = expand(make_product_metric({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  ASSERT_EQ(m.terms().size(), 1u);
  EXPECT_EQ(m.terms()[0].idx, (MultiIndex{0, 1, 2}));
  EXPECT_EQ(m.terms()[0].coefficient, 1.0);
}

TEST(ProductMetric, RejectsDependentAndMalformedForms) {
  EXPECT_CODE(make_product_metric({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}), ErrorCode::DegenerateForms);
  EXPECT_CODE(make_product_metric({{1, 0}, {0, 1, 0}}), ErrorCode::DimensionMismatch);
  EXPECT_CODE(make_product_metric({{1, NAN}, {0, 1}}), ErrorCode::NonFiniteInput);
}

TEST(PolynomialMetric, CanonicalizesAndValidates) {
  PolynomialMetric m(2, 2, {{{1, 0}, 2.0}, {{0, 1}, 1.0}, {{0, 0}, 0.0}});
  ASSERT_EQ(m.terms().size(), 1u);
  EXPECT_EQ(m.terms()[0].idx, (MultiIndex{0, 1}));
  EXPECT_EQ(m.terms()[0].coefficient, 3.0);
  EXPECT_CODE(PolynomialMetric(2, 2, {{{0, 2}, 1.0}}), ErrorCode::InvalidMetric);
  EXPECT_CODE(PolynomialMetric(2, 2, {{{0}, 1.0}}), ErrorCode::InvalidMetric);
}

TEST(Eval, Bg3ExamplePoints) {
  const auto m = make_bg3();
  EXPECT_EQ(eval(m, Direction({3, 1, 1})), 9.0);
  EXPECT_EQ(eval(m, Direction({1, 2, 3})), 0.0);
  EXPECT_EQ(eval(make_bg4(), Direction({1, 1, 1, 1})), -16.0);
  EXPECT_EQ(eval(make_bg4(), Direction({4, 1, 1, 1})), 125.0);
  EXPECT_CODE(eval(m, Direction({1, 2})), ErrorCode::DimensionMismatch);
}

TEST(DerivativeTensor, Bg3AtThreeOneOne) {
  const auto m = make_bg3();
  const Direction y({3, 1, 1});
  const Tensor a1 = derivative_tensor(m, y, 1);
  EXPECT_EQ(a1(0), 15.0);
  EXPECT_EQ(a1(1), -9.0);
  EXPECT_EQ(a1(2), -9.0);
  const Tensor a2 = derivative_tensor(m, y, 2);
  const double expected[3][3] = {{14, -6, -6}, {-6, -2, 2}, {-6, 2, -2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a2(i, j), expected[i][j]);
  EXPECT_EQ(derivative_tensor(m, y, 4).max_abs(), 0.0);
  EXPECT_CODE(derivative_tensor(m, y, 5), ErrorCode::UnsupportedOrder);
  EXPECT_CODE(derivative_tensor(m, y, -1), ErrorCode::UnsupportedOrder);
}

TEST(DerivativeTensor, Bg3ThirdDerivativeIsConstant) {
  // A_(1) = [[6,-2,-2],[-2,-2,2],[-2,2,-2]], A_(2) and A_(3) by the S/P structure.
  const auto m = make_bg3();
  const Tensor a = derivative_tensor(m, Direction({0.3, -1.7, 2.2}), 3);
  const Tensor b = derivative_tensor(m, Direction({-4.0, 0.5, 1.0}), 3);
  EXPECT_EQ(max_abs_diff(a, b), 0.0);
  EXPECT_EQ(a(0, 0, 0), 6.0);
  EXPECT_EQ(a(0, 0, 1), -2.0);
  EXPECT_EQ(a(0, 1, 1), -2.0);
  EXPECT_EQ(a(0, 1, 2), 2.0);
  EXPECT_EQ(a(1, 1, 1), 6.0);
}

TEST(DerivativeTensor, MatchesProductRuleOnRandomForms) {
  UniformSampler rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 2;
    const auto forms = testing_support::random_forms(n, rng);
    const auto poly = expand(forms);
    const Direction y = rng.direction(n, 3.0);
    for (int r = 1; r <= 4; ++r) {
      const Tensor analytic = derivative_tensor(poly, y, r);
      const Tensor oracle = testing_support::product_rule_tensor(forms, y, r);
      EXPECT_LE(max_abs_diff(analytic, oracle), 1e-11 * (1.0 + oracle.max_abs())) << "order " << r;
    }
  }
}

TEST(DerivativeTensor, EulerIdentitiesHold) {
  // y^i A_i = m A and y^j A_ij = (m - 1) A_i.
  for (const auto& poly : {make_bg3(), make_bg4()}) {
    const int m = poly.degree();
    for (const auto& y : sample_box(poly.dim(), 100, 3)) {
      const auto b = derivative_bundle(poly, y);
      double s = 0.0;
      for (int i = 0; i < y.dim(); ++i) s += y[i] * b.a1(i);
      EXPECT_NEAR(s, m * b.a0, 1e-11 * std::pow(y.norm(), m));
      const Tensor c = contract_last(b.a2, y.components());
      EXPECT_LE(max_abs_diff(c, (m - 1.0) * b.a1), 1e-11 * std::pow(y.norm(), m - 1));
    }
  }
}

TEST(DerivativeTensor, HomogeneityOfEachOrder) {
  const auto poly = make_bg4();
  for (const auto& y : sample_box(4, 50, 8)) {
    for (int r = 0; r <= 4; ++r) {
      const Tensor base = derivative_tensor(poly, y, r);
      const Tensor scaled = derivative_tensor(poly, y.scaled(2.0), r);
      EXPECT_EQ(max_abs_diff(scaled, std::pow(2.0, 4 - r) * base), 0.0);
    }
  }
}

TEST(DomainStatus, ClassifiesExamplePoints) {
  EXPECT_EQ(domain_status(make_bg3(), Direction({3, 1, 1})).classification, DomainClass::Regular);
  EXPECT_EQ(domain_status(make_bg3(), Direction({1, 2, 3})).classification, DomainClass::Degenerate);
  EXPECT_EQ(domain_status(make_bg4(), Direction({1, 1, 1, 1})).classification, DomainClass::OutOfDomain);
  EXPECT_EQ(domain_status(make_bg4(), Direction({4, 1, 1, 1})).classification, DomainClass::Regular);
  // Odd degree keeps negative A.
  EXPECT_EQ(domain_status(make_bg3(), Direction({-3, -1, -1})).classification, DomainClass::Regular);
}

TEST(DomainStatus, EpsilonScalesWithDegree) {
  const auto m = make_bg3();
  const Direction y({300, 100, 100});
  const auto s = domain_status(m, y);
  EXPECT_DOUBLE_EQ(s.epsilon, 1e-12 * std::pow(301.0, 3));
  EXPECT_EQ(s.classification, DomainClass::Regular);
  // A tiny positive A is degenerate at this scale even though it is far above 1e-12.
  const Direction near({1.0 + 1e-14, 1.0, 1e-7});
  EXPECT_NE(domain_status(m, near).classification, DomainClass::Regular);
  EXPECT_EQ(domain_status(m, Direction({3, 1, 1}), 100.0).classification, DomainClass::Degenerate);
}

TEST(DomainStatus, NearDegenerateBand) {
  const auto m = make_bg3();
  // a^1 = y1 - y2 - y3 small: A ~ 4 t.
  const double eps = default_domain_epsilon(m, Direction({2, 1, 1}));
  const Direction y({2.0 + 10 * eps, 1.0, 1.0});
  const auto s = domain_status(m, y);
  EXPECT_EQ(s.classification, DomainClass::NearDegenerate);
  EXPECT_TRUE(s.usable());
}

TEST(PowerSums, MatchDefinition) {
  const Direction y({1, -2, 3});
  EXPECT_EQ(power_sum(y, 1), 2.0);
  EXPECT_EQ(power_sum(y, 2), 14.0);
  EXPECT_EQ(power_sum(y, 3), 20.0);
  EXPECT_EQ(coordinate_product(y), -6.0);
  // 2 S3 - S1 S2 + 2 P3 at y.
  EXPECT_EQ(eval(make_bg3(), y), 2 * 20.0 - 2.0 * 14.0 + 2 * -6.0);
}
