#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace finsler {

/// Dense tensor of a given order over an n-dimensional index space.
///
/// All n^order entries are stored row-major (last index fastest). For the
/// orders and dimensions used here (order <= 4, n <= 4) that is at most 256
/// doubles, so symmetry is checked rather than exploited.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int order, double fill = 0.0);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }

  template <std::integral... I>
  double& operator()(I... idx) {
    return data_[flat_of(idx...)];
  }
  template <std::integral... I>
  double operator()(I... idx) const {
    return data_[flat_of(idx...)];
  }

  double& at(std::span<const int> idx) { return data_[flat_index(idx)]; }
  double at(std::span<const int> idx) const { return data_[flat_index(idx)]; }

  std::size_t flat_index(std::span<const int> idx) const;
  std::vector<int> multi_index(std::size_t flat) const;

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool same_shape(const Tensor& other) const noexcept {
    return dim_ == other.dim_ && order_ == other.order_;
  }

  /// Largest absolute entry (0 for an empty tensor).
  double max_abs() const noexcept;
  /// Frobenius norm over all entries.
  double norm() const noexcept;

  /// Largest |T(idx) - T(perm idx)| over all index permutations.
  double symmetry_defect() const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double s);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }

 private:
  template <std::integral... I>
  std::size_t flat_of(I... idx) const {
    std::size_t flat = 0;
    ((flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return flat;
  }

  int dim_ = 0;
  int order_ = 0;
  std::vector<double> data_;
};

/// max_i |a_i - b_i|; throws ShapeMismatch on differing shapes.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// Calls fn(idx) for every multi-index of the given shape in row-major order.
void for_each_index(int dim, int order, const std::function<void(std::span<const int>)>& fn);

/// Non-decreasing index tuples of length `order` (combinations with repetition).
std::vector<std::vector<int>> sorted_tuples(int dim, int order);

/// Writes `value` at every permutation of `idx`.
void fill_symmetric(Tensor& t, std::span<const int> idx, double value);

/// Contract the last slot of `t` with vector `v` (order drops by one).
Tensor contract_last(const Tensor& t, std::span<const double> v);

Tensor identity(int dim);

}  // namespace finsler
