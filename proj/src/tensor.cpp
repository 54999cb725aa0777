#include "finsler/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "finsler/error.hpp"

namespace finsler {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

}  // namespace

Tensor::Tensor(int dim, int order, double fill)
    : dim_(dim), order_(order), data_(ipow(dim, order), fill) {
  if (dim < 1 || order < 0) throw Error(ErrorCode::ShapeMismatch, "invalid tensor shape");
}

std::size_t Tensor::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != order_) {
    throw Error(ErrorCode::ShapeMismatch, "index length does not match tensor order");
  }
  std::size_t flat = 0;
  for (int i : idx) flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return flat;
}

std::vector<int> Tensor::multi_index(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(order_));
  for (int k = order_ - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

double Tensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor::norm() const noexcept {
  long double acc = 0.0L;
  for (double v : data_) acc += static_cast<long double>(v) * v;
  return static_cast<double>(std::sqrt(acc));
}

double Tensor::symmetry_defect() const {
  double defect = 0.0;
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    auto idx = multi_index(flat);
    auto perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
      defect = std::max(defect, std::abs(data_[flat] - at(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return defect;
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (!same_shape(other)) throw Error(ErrorCode::ShapeMismatch, "tensor addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  if (!same_shape(other)) throw Error(ErrorCode::ShapeMismatch, "tensor subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::ShapeMismatch, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void for_each_index(int dim, int order, const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(order), 0);
  const std::size_t total = ipow(dim, order);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(idx);
    for (int k = order - 1; k >= 0; --k) {
      auto& slot = idx[static_cast<std::size_t>(k)];
      if (++slot < dim) break;
      slot = 0;
    }
  }
}

std::vector<std::vector<int>> sorted_tuples(int dim, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(order), 0);
  while (true) {
    out.push_back(idx);
    int k = order - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == dim - 1) --k;
    if (k < 0) break;
    const int next = idx[static_cast<std::size_t>(k)] + 1;
    for (int j = k; j < order; ++j) idx[static_cast<std::size_t>(j)] = next;
  }
  return out;
}

void fill_symmetric(Tensor& t, std::span<const int> idx, double value) {
  std::vector<int> perm(idx.begin(), idx.end());
  std::sort(perm.begin(), perm.end());
  do {
    t.at(perm) = value;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Tensor contract_last(const Tensor& t, std::span<const double> v) {
  if (t.order() < 1 || static_cast<int>(v.size()) != t.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "contract_last");
  }
  Tensor out(t.dim(), t.order() - 1);
  const auto n = static_cast<std::size_t>(t.dim());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += t[flat * n + k] * v[k];
    out[flat] = acc;
  }
  return out;
}

Tensor identity(int dim) {
  Tensor out(dim, 2);
  for (int i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

}  // namespace finsler
