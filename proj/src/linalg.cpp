#include "finsler/linalg.hpp"

#include <Eigen/Dense>

#include "finsler/error.hpp"

namespace finsler {

namespace {

Eigen::MatrixXd to_matrix(const Tensor& t) {
  if (t.order() != 2) throw Error(ErrorCode::ShapeMismatch, "expected an order-2 tensor");
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
  return m;
}

Tensor from_matrix(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Tensor t(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = m(i, j);
  return t;
}

}  // namespace

double determinant(const Tensor& matrix) { return to_matrix(matrix).determinant(); }

Tensor adjugate(const Tensor& matrix) {
  const Eigen::MatrixXd m = to_matrix(matrix);
  const int n = matrix.dim();
  Tensor adj(n, 2);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      adj(j, i) = sign * minor.determinant();
    }
  }
  return adj;
}

Tensor inverse(const Tensor& matrix) { return from_matrix(to_matrix(matrix).partialPivLu().inverse()); }

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::ShapeMismatch, "matmul");
  return from_matrix(to_matrix(a) * to_matrix(b));
}

std::vector<double> symmetric_eigenvalues(const Tensor& matrix) {
  const Eigen::MatrixXd m = to_matrix(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace finsler
