#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/tensor.hpp"

namespace finsler {

/// A fiber direction y = (y^1, ..., y^n). Components are always finite.
class Direction {
 public:
  explicit Direction(std::vector<double> components);

  int dim() const noexcept { return static_cast<int>(y_.size()); }
  double operator[](int i) const { return y_[static_cast<std::size_t>(i)]; }
  std::span<const double> components() const noexcept { return y_; }

  Direction scaled(double lambda) const;
  double norm() const noexcept;
  double max_abs() const noexcept;

 private:
  std::vector<double> y_;
};

/// Sorted, 0-based variable indices of one monomial; multiplicity encodes the
/// exponent, so y1^2 y3 is {0, 0, 2}.
using MultiIndex = std::vector<int>;

struct Term {
  MultiIndex idx;
  double coefficient = 0.0;
};

/// Homogeneous polynomial A(y) of degree m in n variables; L = A^{1/m}.
///
/// This is the only representation the geometry pipeline differentiates.
/// Terms are kept canonical: each multi-index sorted, keys unique and in
/// lexicographic order, exact-zero coefficients dropped.
class PolynomialMetric {
 public:
  PolynomialMetric(int dim, int degree, std::vector<Term> terms);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Coefficient of the monomial with the given (any order) 0-based indices.
  double coefficient(MultiIndex idx) const;

  template <class T>
  T evaluate(std::span<const T> y) const {
    T acc(0.0);
    for (const auto& term : terms_) {
      T mono(term.coefficient);
      for (int v : term.idx) mono = mono * y[static_cast<std::size_t>(v)];
      acc = acc + mono;
    }
    return acc;
  }

  double operator()(const Direction& y) const;

 private:
  int dim_;
  int degree_;
  std::vector<Term> terms_;
};

/// Product metric built from n linearly independent 1-forms a^alpha = a^alpha_beta y^beta.
class LinearFormsMetric {
 public:
  int dim() const noexcept { return dim_; }
  /// Coefficient a^alpha_beta (row alpha, column beta).
  double form(int alpha, int beta) const {
    return forms_[static_cast<std::size_t>(alpha * dim_ + beta)];
  }
  std::vector<std::vector<double>> rows() const;

  /// Direct product of the linear forms at y.
  double operator()(const Direction& y) const;
  long double product(std::span<const long double> y) const;

 private:
  friend LinearFormsMetric make_product_metric(const std::vector<std::vector<double>>&, double);
  LinearFormsMetric(int dim, std::vector<double> forms) : dim_(dim), forms_(std::move(forms)) {}

  int dim_;
  std::vector<double> forms_;
};

/// A and its derivative tensors A_i, A_ij, A_ijk, A_ijkl at y.
struct DerivativeBundle {
  Direction y;
  int degree;
  double a0;
  Tensor a1;
  Tensor a2;
  Tensor a3;
  Tensor a4;

  /// Derivative tensor of order 1..4.
  const Tensor& order(int r) const;
  int dim() const noexcept { return y.dim(); }
};

enum class DomainClass { Regular, NearDegenerate, Degenerate, OutOfDomain };

std::string to_string(DomainClass c);

struct DomainStatus {
  double a_value;
  DomainClass classification;
  double epsilon;
  std::string detail;

  /// Regular and NearDegenerate points carry a well-defined geometry.
  bool usable() const noexcept {
    return classification == DomainClass::Regular ||
           classification == DomainClass::NearDegenerate;
  }
};

// Builders ------------------------------------------------------------------

/// (y1 - y2 - y3)(y1 - y2 + y3)(y1 + y2 - y3) written out as 2 S_3 - S_1 S_2 + 2 P_3.
PolynomialMetric make_bg3();
/// Four-factor analogue written out as 2 S_4 - S_2^2 - 8 P_4.
PolynomialMetric make_bg4();

/// Row alpha of `forms` holds the coefficients of the 1-form a^alpha.
/// Throws DegenerateForms when |det| <= det_threshold * prod(row norms).
LinearFormsMetric make_product_metric(const std::vector<std::vector<double>>& forms,
                                      double det_threshold = 1e-12);

/// The linear forms whose product is make_bg3() / make_bg4().
LinearFormsMetric bg3_forms();
LinearFormsMetric bg4_forms();

PolynomialMetric expand(const LinearFormsMetric& metric);

// Evaluation ----------------------------------------------------------------

double eval(const PolynomialMetric& metric, const Direction& y);

/// Fully symmetric derivative tensor of A of the given order (0..4), obtained
/// by formal differentiation of the coefficient representation.
Tensor derivative_tensor(const PolynomialMetric& metric, const Direction& y, int order);

DerivativeBundle derivative_bundle(const PolynomialMetric& metric, const Direction& y);

/// Default scale-aware degeneracy threshold 1e-12 (1 + max|y|)^m.
double default_domain_epsilon(const PolynomialMetric& metric, const Direction& y);

DomainStatus domain_status(const PolynomialMetric& metric, const Direction& y,
                           std::optional<double> epsilon = std::nullopt);

/// Power sums S_alpha = sum_i (y^i)^alpha and the product P_n = y^1 ... y^n.
double power_sum(const Direction& y, int alpha);
double coordinate_product(const Direction& y);

}  // namespace finsler
