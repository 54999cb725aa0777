#pragma once

#include <cmath>

namespace finsler::oracle {

/// First-order perturbation number re + du * eps with eps^2 = 0.
/// Nesting Dual<Dual<...>> gives mixed higher derivatives, one level per
/// differentiation slot.
template <class T>
struct Dual {
  T re{};
  T du{};

  constexpr Dual() = default;
  constexpr Dual(double c) : re(c), du(0.0) {}  // NOLINT(implicit)
  constexpr Dual(T r, T d) : re(r), du(d) {}
};

template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.re + b.re, a.du + b.du};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.re - b.re, a.du - b.du};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.re, -a.du};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.re * b.re, a.re * b.du + a.du * b.re};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, double s) {
  return {a.re * s, a.du * s};
}
template <class T>
constexpr Dual<T> operator*(double s, const Dual<T>& a) {
  return a * s;
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.re / b.re, (a.du * b.re - a.re * b.du) / (b.re * b.re)};
}

inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.re);
}

inline double exp(double x) { return std::exp(x); }
template <class T>
Dual<T> exp(const Dual<T>& x) {
  const T e = exp(x.re);
  return {e, e * x.du};
}

/// log|x|, whose derivative 1/x holds on both sides of zero.
inline double log_abs(double x) { return std::log(std::abs(x)); }
template <class T>
Dual<T> log_abs(const Dual<T>& x) {
  return {log_abs(x.re), x.du / x.re};
}

}  // namespace finsler::oracle
