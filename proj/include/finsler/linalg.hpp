#pragma once

#include <vector>

#include "finsler/tensor.hpp"

namespace finsler {

/// Dense helpers on order-2 tensors. All throw ShapeMismatch for other orders.
double determinant(const Tensor& matrix);
/// Transposed cofactor matrix, each cofactor a signed minor determinant.
Tensor adjugate(const Tensor& matrix);
/// General LU inverse, no symmetrization or conditioning check.
Tensor inverse(const Tensor& matrix);
Tensor matmul(const Tensor& a, const Tensor& b);
/// Ascending eigenvalues of the symmetric part.
std::vector<double> symmetric_eigenvalues(const Tensor& matrix);

}  // namespace finsler
