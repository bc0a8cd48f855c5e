#pragma once

// Dense univariate polynomials over an exact field, and the rational-function
// field built on them.  RatFunc over Rat gives Q(x), which the series module
// uses to take symbolic large-parameter limits by exact degree comparison.

#include <vector>

#include "ptau/rational.hpp"

namespace ptau {

inline bool is_zero_elem(const Rat& r) { return r == 0; }
inline bool is_zero_elem(const Real& r) { return r.is_zero(); }

template <typename T>
struct Poly {
  std::vector<T> c;  // c[k] is the coefficient of x^k

  Poly() = default;
  Poly(T constant) : c{std::move(constant)} { trim(); }
  Poly(long constant) : c{T(constant)} { trim(); }
  static Poly monomial(T coeff, int deg) {
    Poly p;
    p.c.assign(deg + 1, T(0L));
    p.c[deg] = std::move(coeff);
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && is_zero_elem(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return (int)c.size() - 1; }  // -1 for the zero polynomial
  const T& lead() const { return c.back(); }

  T eval(const T& x) const {
    T acc(0L);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

template <typename T>
Poly<T> operator+(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> r;
  r.c.assign(std::max(a.c.size(), b.c.size()), T(0L));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  r.trim();
  return r;
}

template <typename T>
Poly<T> operator-(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> r;
  r.c.assign(std::max(a.c.size(), b.c.size()), T(0L));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  r.trim();
  return r;
}

template <typename T>
Poly<T> operator-(const Poly<T>& a) {
  Poly<T> r = a;
  for (auto& x : r.c) x = T(0L) - x;
  return r;
}

template <typename T>
Poly<T> operator*(const Poly<T>& a, const Poly<T>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly<T> r;
  r.c.assign(a.c.size() + b.c.size() - 1, T(0L));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  r.trim();
  return r;
}

template <typename T>
Poly<T> operator*(const Poly<T>& a, const T& s) {
  Poly<T> r = a;
  for (auto& x : r.c) x = x * s;
  r.trim();
  return r;
}

template <typename T>
bool operator==(const Poly<T>& a, const Poly<T>& b) {
  return (a - b).is_zero();
}

template <typename T>
Poly<T> derivative(const Poly<T>& a) {
  Poly<T> r;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t k = 1; k < a.c.size(); ++k) r.c[k - 1] = a.c[k] * T((long)k);
  r.trim();
  return r;
}

// Division with remainder over a field; b must be nonzero.
template <typename T>
void divmod(const Poly<T>& a, const Poly<T>& b, Poly<T>& q, Poly<T>& r) {
  if (b.is_zero()) throw ValidationError("poly divmod: division by zero polynomial");
  q = Poly<T>();
  r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    T f = r.lead() / b.lead();
    Poly<T> m = Poly<T>::monomial(f, d);
    q = q + m;
    r = r - m * b;
  }
}

template <typename T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    Poly<T> q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    T inv = T(1L) / a.lead();  // monic normalization
    a = a * inv;
  }
  return a;
}

inline Real poly_eval_real(const Poly<Rat>& p, const Real& x) {
  Real acc(0L);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + to_real(*it);
  return acc;
}

// ----------------------------------------------------------------- Q(x) field

struct RatFunc {
  Poly<Rat> num, den;  // den monic, gcd(num,den) = 1, den != 0

  RatFunc() : num(), den(Rat(1)) {}
  RatFunc(long v) : num(Rat(v)), den(Rat(1)) {}
  RatFunc(const Rat& v) : num(v), den(Rat(1)) {}
  RatFunc(Poly<Rat> n, Poly<Rat> d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  static RatFunc variable() { return RatFunc(Poly<Rat>::monomial(Rat(1), 1), Poly<Rat>(Rat(1))); }

  void reduce() {
    if (den.is_zero()) throw ValidationError("RatFunc: zero denominator");
    if (num.is_zero()) {
      den = Poly<Rat>(Rat(1));
      return;
    }
    Poly<Rat> g = poly_gcd(num, den);
    if (g.degree() > 0) {
      Poly<Rat> q, r;
      divmod(num, g, q, r);
      num = q;
      divmod(den, g, q, r);
      den = q;
    }
    Rat lead = den.lead();
    if (lead != 1) {
      Rat inv = 1 / lead;
      num = num * inv;
      den = den * inv;
    }
  }

  bool is_zero() const { return num.is_zero(); }
};

inline bool is_zero_elem(const RatFunc& f) { return f.is_zero(); }

inline RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num, a.den); }
inline RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num * b.num, a.den * b.den);
}
inline RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw ValidationError("RatFunc: division by zero");
  return RatFunc(a.num * b.den, a.den * b.num);
}
inline bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

// lim_{x->inf} f(x) / x^p, by degree comparison; throws if the limit diverges.
inline Rat limit_at_infinity_scaled(const RatFunc& f, long p) {
  if (f.is_zero()) return Rat(0);
  long excess = (long)f.num.degree() - (long)f.den.degree() - p;
  if (excess < 0) return Rat(0);
  if (excess == 0) return f.num.lead() / f.den.lead();
  throw ValidationError("limit_at_infinity_scaled: divergent limit");
}

// Evaluate at a rational point (denominator must not vanish there).
inline Rat ratfunc_eval(const RatFunc& f, const Rat& x) {
  Rat d = f.den.eval(x);
  if (d == 0) throw ValidationError("ratfunc_eval: pole at evaluation point");
  return f.num.eval(x) / d;
}

}  // namespace ptau
