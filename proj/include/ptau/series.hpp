#pragma once

// Truncated power series over a field-like scalar.  The same template backs
// exact rational series (cumulant machinery, symbolic-parameter limits) and
// floating jets in log-time used by the Toda lattice recursion.

#include <vector>

#include "ptau/poly.hpp"

namespace ptau {

template <typename T>
struct Series {
  // c[k] is the coefficient of t^k; the series is trusted through order
  // c.size()-1 inclusive.
  std::vector<T> c;

  Series() = default;
  explicit Series(int order) : c(order + 1, T(0L)) {}
  int order() const { return (int)c.size() - 1; }
  const T& at(int k) const { return c[k]; }

  static Series constant(T v, int order) {
    Series s(order);
    s.c[0] = std::move(v);
    return s;
  }
  Series truncated(int order) const {
    Series s = *this;
    if ((int)s.c.size() > order + 1) s.c.resize(order + 1);
    return s;
  }
};

template <typename T>
Series<T> operator+(const Series<T>& a, const Series<T>& b) {
  Series<T> r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

template <typename T>
Series<T> operator-(const Series<T>& a, const Series<T>& b) {
  Series<T> r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

template <typename T>
Series<T> operator-(const Series<T>& a) {
  Series<T> r = a;
  for (auto& x : r.c) x = T(0L) - x;
  return r;
}

template <typename T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) {
  Series<T> r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    T acc(0L);
    for (int i = 0; i <= k; ++i) acc = acc + a.c[i] * b.c[k - i];
    r.c[k] = acc;
  }
  return r;
}

template <typename T>
Series<T> operator*(const Series<T>& a, const T& s) {
  Series<T> r = a;
  for (auto& x : r.c) x = x * s;
  return r;
}

// a / b; requires b(0) invertible.  Trusted order = min of the operands'.
template <typename T>
Series<T> operator/(const Series<T>& a, const Series<T>& b) {
  if (is_zero_elem(b.c[0]))
    throw ValidationError("series division: denominator has zero constant term");
  Series<T> r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    T acc = a.c[k];
    for (int i = 0; i < k; ++i) acc = acc - r.c[i] * b.c[k - i];
    r.c[k] = acc / b.c[0];
  }
  return r;
}

// d/dt: trusted one order lower.
template <typename T>
Series<T> series_derivative(const Series<T>& a) {
  if (a.order() < 1) throw ValidationError("series_derivative: order too small");
  Series<T> r(a.order() - 1);
  for (int k = 1; k <= a.order(); ++k) r.c[k - 1] = a.c[k] * T((long)k);
  return r;
}

// Multiplication by t: trusted one order higher (coefficients shift up).
template <typename T>
Series<T> series_shift_up(const Series<T>& a) {
  Series<T> r(a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) r.c[k + 1] = a.c[k];
  return r;
}

// (log a)'' as a series, computed without taking any logarithm:
// (a''a - a'^2)/a^2.  Trusted order drops by 2.
template <typename T>
Series<T> series_dlog2(const Series<T>& a) {
  Series<T> d1 = series_derivative(a);
  Series<T> d2 = series_derivative(d1);
  int k = a.order() - 2;
  Series<T> num = d2.truncated(k) * a.truncated(k) - d1.truncated(k) * d1.truncated(k);
  Series<T> den = a.truncated(k) * a.truncated(k);
  return num / den;
}

}  // namespace ptau
