#include <gtest/gtest.h>

#include "finsler/curvature.hpp"
#include "finsler/error.hpp"
#include "finsler/linalg.hpp"
#include "finsler/oracle/oracle.hpp"
#include "finsler/power.hpp"
#include "support.hpp"

using namespace finsler;
using testing_support::random_forms;
using testing_support::rel_err;
using testing_support::tensor_rel;

namespace {

struct Case {
  LinearFormsMetric forms;
  PolynomialMetric poly;
  std::vector<Direction> points;
};

std::vector<Case> random_cases(int n, int metrics, int points, std::uint64_t seed) {
  UniformSampler rng(seed);
  std::vector<Case> out;
  // Some draws have no well-conditioned cone inside the box; take the next one.
  for (std::uint64_t k = 1; static_cast<int>(out.size()) < metrics; ++k) {
    auto f = random_forms(n, rng);
    auto p = expand(f);
    try {
      auto pts = sample_regular_points(p, points, seed + k);
      out.push_back({std::move(f), std::move(p), std::move(pts)});
    } catch (const Error&) {
    }
  }
  return out;
}

class RandomProduct : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(RandomProduct, ExpansionMatchesProductRule) {
  for (const auto& c : random_cases(GetParam(), 4, 10, 100 + GetParam())) {
    for (const auto& y : c.points) {
      EXPECT_LE(rel_err(eval(c.poly, y), c.forms(y)), 1e-12);
      for (int r = 1; r <= 3; ++r)
        EXPECT_LE(tensor_rel(derivative_tensor(c.poly, y, r), testing_support::product_rule_tensor(c.forms, y, r)), 1e-11);
    }
  }
}

TEST_P(RandomProduct, PipelineAgreesWithDualNumbers) {
  const int n = GetParam();
  const Rational p = metric_exponent(n);
  for (const auto& c : random_cases(n, 3, 10, 200 + n)) {
    for (const auto& y : c.points) {
      const auto gp = evaluate_geometry(c.poly, y);
      const oracle::PowerComposite comp{c.poly, p};
      EXPECT_TRUE(oracle::compare(gp.g, 0.5 * oracle::dual_tensor(comp, y, 2), 1e-10, oracle::Method::DualNumber).pass);
      EXPECT_TRUE(oracle::compare(gp.c_cov, 0.25 * oracle::dual_tensor(comp, y, 3), 1e-10, oracle::Method::DualNumber).pass);
      EXPECT_TRUE(oracle::compare(gp.c_grad, 0.25 * oracle::dual_tensor(comp, y, 4), 1e-8, oracle::Method::DualNumber).pass);
    }
  }
}

TEST_P(RandomProduct, InverseEulerAndCurvatureInvariants) {
  const int n = GetParam();
  for (const auto& c : random_cases(n, 3, 10, 300 + n)) {
    for (const auto& y : c.points) {
      const auto gp = evaluate_geometry(c.poly, y);
      EXPECT_LE(max_abs_diff(matmul(gp.g, gp.g_inv), identity(n)), 1e-9);
      double q = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q += gp.g(i, j) * y[i] * y[j];
      EXPECT_LE(rel_err(q, gp.l_value * gp.l_value), 1e-10);
      const Tensor cross = lower_curvature(gp.g, vertical_curvature_mixed(gp));
      EXPECT_TRUE(oracle::compare(cross, vertical_curvature_cov(gp), 1e-8, oracle::Method::CrossPath).pass);
      const auto cb = evaluate_curvature(gp);
      EXPECT_LE(cb.ricci.symmetry_defect(), 1e-10 * (1.0 + cb.ricci.norm()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, RandomProduct, ::testing::Values(3, 4, 5));
