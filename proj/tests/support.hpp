#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/sampling.hpp"
#include "finsler/tensor.hpp"

namespace testing_support {

using finsler::Direction;
using finsler::LinearFormsMetric;
using finsler::Tensor;

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/// |a - b|_max relative to |b|_max.
inline double tensor_rel(const Tensor& a, const Tensor& b) {
  const double s = b.max_abs();
  const double d = finsler::max_abs_diff(a, b);
  return s == 0.0 ? d : d / s;
}

/// Random n x n forms with entries in [-2, 2], re-drawn until well conditioned.
inline LinearFormsMetric random_forms(int n, finsler::UniformSampler& rng) {
  for (;;) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& r : rows)
      for (auto& v : r) v = rng.next(-2.0, 2.0);
    try {
      return finsler::make_product_metric(rows, 1e-2);
    } catch (...) {
    }
  }
}

/// d^r prod_alpha a^alpha(y) at the index tuple `idx`, by the product rule:
/// every slot differentiates a distinct factor.
inline double product_rule(const LinearFormsMetric& f, const Direction& y, const std::vector<int>& idx) {
  const int n = f.dim();
  std::vector<double> value(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b) s += f.form(a, b) * y[b];
    value[static_cast<std::size_t>(a)] = s;
  }
  const int r = static_cast<int>(idx.size());
  double total = 0.0;
  std::vector<int> pick(static_cast<std::size_t>(r), 0);
  for (;;) {
    bool distinct = true;
    for (int i = 0; i < r && distinct; ++i)
      for (int j = 0; j < i && distinct; ++j) distinct = pick[static_cast<std::size_t>(i)] != pick[static_cast<std::size_t>(j)];
    if (distinct) {
      double term = 1.0;
      std::vector<bool> used(static_cast<std::size_t>(n), false);
      for (int i = 0; i < r; ++i) {
        const int a = pick[static_cast<std::size_t>(i)];
        used[static_cast<std::size_t>(a)] = true;
        term *= f.form(a, idx[static_cast<std::size_t>(i)]);
      }
      for (int a = 0; a < n; ++a)
        if (!used[static_cast<std::size_t>(a)]) term *= value[static_cast<std::size_t>(a)];
      total += term;
    }
    int k = 0;
    while (k < r && ++pick[static_cast<std::size_t>(k)] == n) pick[static_cast<std::size_t>(k++)] = 0;
    if (k == r) break;
  }
  return total;
}

inline Tensor product_rule_tensor(const LinearFormsMetric& f, const Direction& y, int order) {
  Tensor t(f.dim(), order);
  finsler::for_each_index(f.dim(), order, [&](std::span<const int> idx) {
    t.at(idx) = product_rule(f, y, std::vector<int>(idx.begin(), idx.end()));
  });
  return t;
}

}  // namespace testing_support
