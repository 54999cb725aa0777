#include "finsler/metric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "finsler/error.hpp"

namespace finsler {

Direction::Direction(std::vector<double> components) : y_(std::move(components)) {
  if (y_.empty()) throw Error(ErrorCode::DimensionMismatch, "empty direction");
  for (double v : y_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "direction component is not finite");
  }
}

Direction Direction::scaled(double lambda) const {
  auto out = y_;
  for (double& v : out) v *= lambda;
  return Direction(std::move(out));
}

double Direction::norm() const noexcept {
  double s = 0.0;
  for (double v : y_) s += v * v;
  return std::sqrt(s);
}

double Direction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : y_) m = std::max(m, std::abs(v));
  return m;
}

PolynomialMetric::PolynomialMetric(int dim, int degree, std::vector<Term> terms)
    : dim_(dim), degree_(degree) {
  if (dim < 1) throw Error(ErrorCode::InvalidMetric, "dimension must be positive");
  if (degree < 1) throw Error(ErrorCode::InvalidMetric, "degree must be positive");
  std::map<MultiIndex, double> merged;
  for (auto& term : terms) {
    if (static_cast<int>(term.idx.size()) != degree) {
      throw Error(ErrorCode::InvalidMetric, "monomial length differs from the degree");
    }
    if (!std::isfinite(term.coefficient)) {
      throw Error(ErrorCode::NonFiniteInput, "non-finite coefficient");
    }
    for (int v : term.idx) {
      if (v < 0 || v >= dim) throw Error(ErrorCode::InvalidMetric, "variable index out of range");
    }
    std::sort(term.idx.begin(), term.idx.end());
    merged[term.idx] += term.coefficient;
  }
  for (auto& [idx, c] : merged) {
    if (c != 0.0) terms_.push_back({idx, c});
  }
}

double PolynomialMetric::coefficient(MultiIndex idx) const {
  std::sort(idx.begin(), idx.end());
  auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                             [](const Term& t, const MultiIndex& key) { return t.idx < key; });
  return (it != terms_.end() && it->idx == idx) ? it->coefficient : 0.0;
}

double PolynomialMetric::operator()(const Direction& y) const { return eval(*this, y); }

std::vector<std::vector<double>> LinearFormsMetric::rows() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) out[static_cast<std::size_t>(a)].push_back(form(a, b));
  }
  return out;
}

double LinearFormsMetric::operator()(const Direction& y) const {
  if (y.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "direction vs linear forms");
  double prod = 1.0;
  for (int a = 0; a < dim_; ++a) {
    double s = 0.0;
    for (int b = 0; b < dim_; ++b) s += form(a, b) * y[b];
    prod *= s;
  }
  return prod;
}

long double LinearFormsMetric::product(std::span<const long double> y) const {
  long double prod = 1.0L;
  for (int a = 0; a < dim_; ++a) {
    long double s = 0.0L;
    for (int b = 0; b < dim_; ++b) s += form(a, b) * y[static_cast<std::size_t>(b)];
    prod *= s;
  }
  return prod;
}

const Tensor& DerivativeBundle::order(int r) const {
  switch (r) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    case 4: return a4;
    default: throw Error(ErrorCode::UnsupportedOrder, "bundle holds orders 1..4");
  }
}

std::string to_string(DomainClass c) {
  switch (c) {
    case DomainClass::Regular: return "Regular";
    case DomainClass::NearDegenerate: return "NearDegenerate";
    case DomainClass::Degenerate: return "Degenerate";
    case DomainClass::OutOfDomain: return "OutOfDomain";
  }
  return "Unknown";
}

PolynomialMetric make_bg3() {
  // 2 S_3 - S_1 S_2 + 2 P_3
  std::vector<Term> terms;
  for (int i = 0; i < 3; ++i) terms.push_back({{i, i, i}, 2.0});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) terms.push_back({{i, j, j}, -1.0});
  }
  terms.push_back({{0, 1, 2}, 2.0});
  return PolynomialMetric(3, 3, std::move(terms));
}

PolynomialMetric make_bg4() {
  // 2 S_4 - S_2^2 - 8 P_4
  std::vector<Term> terms;
  for (int i = 0; i < 4; ++i) terms.push_back({{i, i, i, i}, 2.0});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) terms.push_back({{i, i, j, j}, -1.0});
  }
  terms.push_back({{0, 1, 2, 3}, -8.0});
  return PolynomialMetric(4, 4, std::move(terms));
}

LinearFormsMetric make_product_metric(const std::vector<std::vector<double>>& forms,
                                      double det_threshold) {
  const int n = static_cast<int>(forms.size());
  if (n < 1) throw Error(ErrorCode::InvalidMetric, "no linear forms given");
  Eigen::MatrixXd m(n, n);
  std::vector<double> flat;
  double hadamard = 1.0;
  for (int a = 0; a < n; ++a) {
    const auto& row = forms[static_cast<std::size_t>(a)];
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, "linear forms matrix must be square");
    }
    double row_norm = 0.0;
    for (int b = 0; b < n; ++b) {
      const double v = row[static_cast<std::size_t>(b)];
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "non-finite form coefficient");
      m(a, b) = v;
      flat.push_back(v);
      row_norm += v * v;
    }
    hadamard *= std::sqrt(row_norm);
  }
  const double det = m.fullPivLu().determinant();
  if (!(std::abs(det) > det_threshold * hadamard)) {
    throw Error(ErrorCode::DegenerateForms, "1-forms are not linearly independent (det = " +
                                                std::to_string(det) + ")");
  }
  return LinearFormsMetric(n, std::move(flat));
}

LinearFormsMetric bg3_forms() {
  return make_product_metric({{1, -1, -1}, {1, -1, 1}, {1, 1, -1}});
}

LinearFormsMetric bg4_forms() {
  return make_product_metric(
      {{1, -1, -1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}, {1, 1, 1, -1}});
}

PolynomialMetric expand(const LinearFormsMetric& metric) {
  const int n = metric.dim();
  std::map<MultiIndex, double> acc{{MultiIndex{}, 1.0}};
  for (int a = 0; a < n; ++a) {
    std::map<MultiIndex, double> next;
    for (const auto& [idx, c] : acc) {
      for (int b = 0; b < n; ++b) {
        const double coef = metric.form(a, b);
        if (coef == 0.0) continue;
        auto key = idx;
        key.insert(std::upper_bound(key.begin(), key.end(), b), b);
        next[key] += c * coef;
      }
    }
    acc = std::move(next);
  }
  std::vector<Term> terms;
  for (auto& [idx, c] : acc) terms.push_back({idx, c});
  return PolynomialMetric(n, n, std::move(terms));
}

double eval(const PolynomialMetric& metric, const Direction& y) {
  if (y.dim() != metric.dim()) throw Error(ErrorCode::DimensionMismatch, "direction vs metric");
  return metric.evaluate<double>(y.components());
}

namespace {

// d^r/dy^{v_1}...dy^{v_r} of c * prod_{k in idx} y^k. Each differentiation
// multiplies by the multiplicity of the variable and removes one copy of it.
double monomial_derivative(const Term& term, std::span<const int> vars, std::span<const double> y) {
  MultiIndex rest = term.idx;
  double coef = term.coefficient;
  for (int v : vars) {
    auto [lo, hi] = std::equal_range(rest.begin(), rest.end(), v);
    const auto count = hi - lo;
    if (count == 0) return 0.0;
    coef *= static_cast<double>(count);
    rest.erase(lo);
  }
  for (int k : rest) coef *= y[static_cast<std::size_t>(k)];
  return coef;
}

}  // namespace

Tensor derivative_tensor(const PolynomialMetric& metric, const Direction& y, int order) {
  if (y.dim() != metric.dim()) throw Error(ErrorCode::DimensionMismatch, "direction vs metric");
  if (order < 0 || order > 4) throw Error(ErrorCode::UnsupportedOrder, "derivative order must be 0..4");
  Tensor out(metric.dim(), order);
  if (order > metric.degree()) return out;
  for (const auto& tuple : sorted_tuples(metric.dim(), order)) {
    double v = 0.0;
    for (const auto& term : metric.terms()) v += monomial_derivative(term, tuple, y.components());
    fill_symmetric(out, tuple, v);
  }
  return out;
}

DerivativeBundle derivative_bundle(const PolynomialMetric& metric, const Direction& y) {
  return DerivativeBundle{y,
                          metric.degree(),
                          eval(metric, y),
                          derivative_tensor(metric, y, 1),
                          derivative_tensor(metric, y, 2),
                          derivative_tensor(metric, y, 3),
                          derivative_tensor(metric, y, 4)};
}

double default_domain_epsilon(const PolynomialMetric& metric, const Direction& y) {
  return 1e-12 * std::pow(1.0 + y.max_abs(), metric.degree());
}

DomainStatus domain_status(const PolynomialMetric& metric, const Direction& y,
                           std::optional<double> epsilon) {
  const double a = eval(metric, y);
  const double eps = epsilon.value_or(default_domain_epsilon(metric, y));
  const bool even_root = metric.degree() % 2 == 0;
  if (std::abs(a) <= eps) {
    return {a, DomainClass::Degenerate, eps, "A(y) vanishes within tolerance"};
  }
  if (even_root && a < 0.0) {
    return {a, DomainClass::OutOfDomain, eps, "even root requires A(y) > 0"};
  }
  if (std::abs(a) <= 1e3 * eps) {
    return {a, DomainClass::NearDegenerate, eps, "A(y) is close to zero; expect poor conditioning"};
  }
  return {a, DomainClass::Regular, eps, ""};
}

double power_sum(const Direction& y, int alpha) {
  double s = 0.0;
  for (double v : y.components()) s += std::pow(v, alpha);
  return s;
}

double coordinate_product(const Direction& y) {
  double p = 1.0;
  for (double v : y.components()) p *= v;
  return p;
}

}  // namespace finsler
