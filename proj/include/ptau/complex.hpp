#pragma once

// Minimal complex scalar over Real.  Used wherever mixed Bessel combinations
// make determinants and recurrences genuinely complex; declared-real outputs
// are checked with assert_real_part.

#include "ptau/real.hpp"

namespace ptau {

struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0L) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r), im(0L) {}
  Complex(long r) : re(r), im(0L) {}
  Complex(int r) : re(long(r)), im(0L) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Complex operator*(const Real& s, const Complex& a) { return a * s; }
inline Complex operator/(const Complex& a, const Complex& b) {
  Real n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline Complex& operator+=(Complex& a, const Complex& b) { a = a + b; return a; }
inline Complex& operator-=(Complex& a, const Complex& b) { a = a - b; return a; }
inline Complex& operator*=(Complex& a, const Complex& b) { a = a * b; return a; }
inline Complex& operator/=(Complex& a, const Complex& b) { a = a / b; return a; }

inline bool is_zero_elem(const Complex& z) { return z.is_zero(); }

inline Real abs(const Complex& z) {
  Real r;
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

inline Real rel_diff(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  Real m = abs(a);
  Real mb = abs(b);
  if (mb > m) m = mb;
  if (m.is_zero()) return Real(0);
  return d / m;
}

// Residual-imaginary check for declared-real quantities: |Im z| <= tol*|z|.
inline Real assert_real_part(const Complex& z, double tol, const char* what) {
  Real scale = abs(z);
  if (scale.is_zero()) scale = Real(1);
  if (abs(z.im) > Real(tol) * scale)
    throw ValidationError(std::string(what) + ": imaginary residue " + z.im.str() +
                          " exceeds tolerance (|z|=" + scale.str() + ")");
  return z.re;
}

// Unit phase e^{i pi w}: reduce w = m + f with m integer and |f| <= 1/2, then
// cos/sin(pi f) with the exact parity sign, so integer w gives exactly +-1.
inline Complex unit_phase_pi(const Real& w) {
  Real m = round_nearest(w);
  Real f = w - m;
  if (f.is_zero()) {
    bool odd = (m.to_long() % 2) != 0;
    return odd ? Complex(Real(-1L)) : Complex(Real(1L));
  }
  Real pf = const_pi() * f;
  Real c = cos(pf), s = sin(pf);
  bool odd = (m.to_long() % 2) != 0;
  if (odd) return {-c, -s};
  return {c, s};
}

}  // namespace ptau
