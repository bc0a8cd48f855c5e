#pragma once

// Dense matrices over Real or Complex with LU determinants and the trace
// formulas for derivatives of log det along a one-parameter family:
//   B_k := A^{-1} A^{(k)}
//   (log det A)'   = tr B_1
//   (log det A)''  = tr B_2 - tr(B_1^2)
//   (log det A)''' = tr B_3 - 3 tr(B_1 B_2) + 2 tr(B_1^3)

#include <vector>

#include "ptau/complex.hpp"

namespace ptau {

template <typename T>
struct Matrix {
  long n = 0, m = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(long rows, long cols) : n(rows), m(cols), a(rows * cols, T(0L)) {}
  static Matrix identity(long k) {
    Matrix r(k, k);
    for (long i = 0; i < k; ++i) r.at(i, i) = T(1L);
    return r;
  }
  T& at(long i, long j) { return a[i * m + j]; }
  const T& at(long i, long j) const { return a[i * m + j]; }
};

inline Real abs_elem(const Real& x) { return abs(x); }
inline Real abs_elem(const Complex& z) { return abs(z); }
inline bool zero_elem(const Real& x) { return x.is_zero(); }
inline bool zero_elem(const Complex& z) { return z.re.is_zero() && z.im.is_zero(); }

template <typename T>
struct LuDecomposition {
  Matrix<T> lu;
  std::vector<long> piv;
  int sign = 1;        // permutation parity
  bool singular = false;
};

template <typename T>
LuDecomposition<T> lu_factor(Matrix<T> a) {
  if (a.n != a.m) throw ValidationError("lu_factor: matrix must be square");
  long n = a.n;
  LuDecomposition<T> f{std::move(a), {}, 1, false};
  f.piv.resize(n);
  for (long k = 0; k < n; ++k) {
    long p = k;
    Real best = abs_elem(f.lu.at(k, k));
    for (long i = k + 1; i < n; ++i) {
      Real cand = abs_elem(f.lu.at(i, k));
      if (cand > best) {
        best = cand;
        p = i;
      }
    }
    f.piv[k] = p;
    if (p != k) {
      for (long j = 0; j < n; ++j) std::swap(f.lu.at(k, j), f.lu.at(p, j));
      f.sign = -f.sign;
    }
    if (zero_elem(f.lu.at(k, k))) {
      f.singular = true;
      return f;
    }
    for (long i = k + 1; i < n; ++i) {
      T mult = f.lu.at(i, k) / f.lu.at(k, k);
      f.lu.at(i, k) = mult;
      for (long j = k + 1; j < n; ++j) f.lu.at(i, j) = f.lu.at(i, j) - mult * f.lu.at(k, j);
    }
  }
  return f;
}

template <typename T>
T lu_det(const LuDecomposition<T>& f) {
  if (f.singular) return T(0L);
  T d(f.sign > 0 ? 1L : -1L);
  for (long k = 0; k < f.lu.n; ++k) d = d * f.lu.at(k, k);
  return d;
}

// Solve A X = B (B may have several columns).
template <typename T>
Matrix<T> lu_solve(const LuDecomposition<T>& f, Matrix<T> b) {
  if (f.singular) throw ValidationError("lu_solve: singular matrix");
  long n = f.lu.n;
  if (b.n != n) throw ValidationError("lu_solve: dimension mismatch");
  for (long k = 0; k < n; ++k)
    if (f.piv[k] != k)
      for (long j = 0; j < b.m; ++j) std::swap(b.at(k, j), b.at(f.piv[k], j));
  for (long k = 0; k < n; ++k)
    for (long i = k + 1; i < n; ++i)
      for (long j = 0; j < b.m; ++j) b.at(i, j) = b.at(i, j) - f.lu.at(i, k) * b.at(k, j);
  for (long k = n - 1; k >= 0; --k) {
    for (long j = 0; j < b.m; ++j) b.at(k, j) = b.at(k, j) / f.lu.at(k, k);
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < b.m; ++j) b.at(i, j) = b.at(i, j) - f.lu.at(i, k) * b.at(k, j);
  }
  return b;
}

template <typename T>
T det(const Matrix<T>& a) {
  return lu_det(lu_factor(a));
}

template <typename T>
T trace(const Matrix<T>& a) {
  T s(0L);
  for (long i = 0; i < a.n; ++i) s = s + a.at(i, i);
  return s;
}

template <typename T>
T trace_product(const Matrix<T>& a, const Matrix<T>& b) {
  T s(0L);
  for (long i = 0; i < a.n; ++i)
    for (long j = 0; j < a.m; ++j) s = s + a.at(i, j) * b.at(j, i);
  return s;
}

template <typename T>
T trace_product3(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c) {
  T s(0L);
  for (long i = 0; i < a.n; ++i)
    for (long j = 0; j < a.m; ++j)
      for (long k = 0; k < b.m; ++k) s = s + a.at(i, j) * b.at(j, k) * c.at(k, i);
  return s;
}

template <typename T>
struct LogDetJets {
  T value;             // det A itself
  std::vector<T> dlog; // dlog[k-1] = d^k/dt^k log det A, k = 1..order
};

// derivs[k-1] holds A^{(k)}; order = derivs.size() (0..3 supported).
template <typename T>
LogDetJets<T> logdet_jets(const Matrix<T>& a, const std::vector<Matrix<T>>& derivs) {
  if (derivs.size() > 3)
    throw ValidationError("logdet_jets: jets beyond third order not implemented");
  LuDecomposition<T> f = lu_factor(a);
  LogDetJets<T> r{lu_det(f), {}};
  if (derivs.empty()) return r;
  if (f.singular) throw ValidationError("logdet_jets: singular matrix");
  std::vector<Matrix<T>> b;
  b.reserve(derivs.size());
  for (const auto& d : derivs) b.push_back(lu_solve(f, d));
  r.dlog.push_back(trace(b[0]));
  if (derivs.size() >= 2) r.dlog.push_back(trace(b[1]) - trace_product(b[0], b[0]));
  if (derivs.size() >= 3)
    r.dlog.push_back(trace(b[2]) - trace_product(b[0], b[1]) * T(3L) +
                     trace_product3(b[0], b[0], b[0]) * T(2L));
  return r;
}

}  // namespace ptau
