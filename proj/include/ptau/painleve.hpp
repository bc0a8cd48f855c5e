#pragma once

// The rank-one Hamiltonian system behind the determinant family:
//
//   t H = p^2 q^2 - (q^2 + v1 q - t) p + ((v1+v2)/2) q,
//
// its birational symmetries s0, s1, s2 and the parameter-shift composition
// T1 = (apply s0, then s2, then s1, then s2) moving (v1, v2) -> (v1+1, v2+1),
// the second-order scalar equations satisfied by the various log-derivative
// observables (as residual evaluators over jets), and the exact jet
// transforms between those observables.
//
// Everything symbolic is templated over the scalar: mpq rationals give exact
// symmetry checks, Real/Complex give numeric residuals.

#include <array>
#include <vector>

#include "ptau/complex.hpp"
#include "ptau/poly.hpp"
#include "ptau/rational.hpp"
#include "ptau/real.hpp"

namespace ptau {

template <typename T>
struct HamiltonianState {
  T p, q, t, v1, v2;
};

template <typename T>
T hamiltonian_t(const HamiltonianState<T>& s) {
  // t*H (polynomial in the state, so usable over exact rationals)
  return s.p * s.p * s.q * s.q - (s.q * s.q + s.v1 * s.q - s.t) * s.p +
         (s.v1 + s.v2) / T(2L) * s.q;
}

enum class BacklundOp { S0, S1, S2 };

template <typename T>
HamiltonianState<T> apply_backlund(const HamiltonianState<T>& s, BacklundOp op) {
  switch (op) {
    case BacklundOp::S0: {
      if (is_zero_elem(s.q)) throw ValidationError("backlund s0: q must be nonzero");
      if (is_zero_elem(s.t)) throw ValidationError("backlund s0: t must be nonzero");
      T p_new = s.q / s.t * (s.q * (s.p - T(1L)) - (s.v1 - s.v2) / T(2L)) + T(1L);
      T q_new = T(0L) - s.t / s.q;
      return {p_new, q_new, s.t, T(0L) - T(1L) - s.v2, T(0L) - T(1L) - s.v1};
    }
    case BacklundOp::S1: {
      T pm1 = s.p - T(1L);
      if (is_zero_elem(pm1)) throw ValidationError("backlund s1: p must differ from 1");
      return {s.p, s.q + (s.v2 - s.v1) / (T(2L) * pm1), s.t, s.v2, s.v1};
    }
    case BacklundOp::S2:
      return {T(1L) - s.p, T(0L) - s.q, T(0L) - s.t, s.v1, T(0L) - s.v2};
  }
  throw ValidationError("apply_backlund: unknown operation");
}

// Parameter shift (v1, v2) -> (v1+1, v2+1); t returns to itself (s2 flips it
// twice).
template <typename T>
HamiltonianState<T> apply_t1(const HamiltonianState<T>& s) {
  HamiltonianState<T> r = apply_backlund(s, BacklundOp::S0);
  r = apply_backlund(r, BacklundOp::S2);
  r = apply_backlund(r, BacklundOp::S1);
  r = apply_backlund(r, BacklundOp::S2);
  return r;
}

// --- scalar ODE residuals over jets ------------------------------------------

// Second-order contact element: value, first and second derivative at t.
template <typename T>
struct Jet2 {
  T t, f, f1, f2;
};

template <typename T>
struct ResidualReport {
  T residual;
  Real scale;     // sum of additive term magnitudes
  Real relative;  // |residual| / scale
};

namespace detail {
inline Real mag_of(const Real& x) { return abs(x); }
inline Real mag_of(const Complex& z) { return abs(z); }
}  // namespace detail

template <typename T>
ResidualReport<T> sum_terms(const std::vector<T>& terms) {
  T resid(0L);
  Real scale(0L);
  for (const T& x : terms) {
    resid = resid + x;
    scale += detail::mag_of(x);
  }
  Real r = scale.is_zero() ? detail::mag_of(resid) : detail::mag_of(resid) / scale;
  return ResidualReport<T>{resid, scale, r};
}

// (t s'')^2 - v1 v2 (s')^2 + s'(4s' - 1)(s - t s') - (v1-v2)^2/64
template <typename T>
ResidualReport<T> sigma_form_residual(const Jet2<T>& s, const T& v1, const T& v2) {
  T ts2 = s.t * s.f2;
  T d = v1 - v2;
  return sum_terms<T>({ts2 * ts2, T(0L) - v1 * v2 * s.f1 * s.f1,
                       s.f1 * (T(4L) * s.f1 - T(1L)) * (s.f - s.t * s.f1),
                       T(0L) - d * d / T(64L)});
}

// (t h'')^2 + (4 h'^2 - 1)(t h' - h) + v1 v2 h' - (v1^2 + v2^2)/4
template <typename T>
ResidualReport<T> h_form_residual(const Jet2<T>& h, const T& v1, const T& v2) {
  T th2 = h.t * h.f2;
  return sum_terms<T>({th2 * th2, (T(4L) * h.f1 * h.f1 - T(1L)) * (h.t * h.f1 - h.f),
                       v1 * v2 * h.f1, T(0L) - (v1 * v1 + v2 * v2) / T(4L)});
}

// (t y'')^2 - (n - (2n+a) y')^2 + 4 (n(n+a) + t y' - y) y' (y' - 1)
template <typename T>
ResidualReport<T> y_form_residual(const Jet2<T>& y, const T& n, const T& a) {
  T ty2 = y.t * y.f2;
  T lin = n - (T(2L) * n + a) * y.f1;
  return sum_terms<T>({ty2 * ty2, T(0L) - lin * lin,
                       T(4L) * (n * (n + a) + y.t * y.f1 - y.f) * y.f1 * (y.f1 - T(1L))});
}

// q'' - q'^2/q + q'/t - q^2 (q - v2)/t^2 + 1/q - (v1+1)/t
template <typename T>
ResidualReport<T> q_form_residual(const Jet2<T>& q, const T& v1, const T& v2) {
  if (is_zero_elem(q.f)) throw ValidationError("q_form_residual: q must be nonzero");
  if (is_zero_elem(q.t)) throw ValidationError("q_form_residual: t must be nonzero");
  T t2 = q.t * q.t;
  return sum_terms<T>({q.f2, T(0L) - q.f1 * q.f1 / q.f, q.f1 / q.t,
                       T(0L) - q.f * q.f * (q.f - v2) / t2, T(1L) / q.f,
                       T(0L) - (v1 + T(1L)) / q.t});
}

// (t s'')^2 - (s - t s' + 2 s'^2 + (sum nu) s')^2 + 4 prod (nu_l + s')
template <typename T>
ResidualReport<T> sigma_v_form_residual(const Jet2<T>& s, const std::array<T, 4>& nu) {
  T nsum = nu[0] + nu[1] + nu[2] + nu[3];
  T ts2 = s.t * s.f2;
  T mid = s.f - s.t * s.f1 + T(2L) * s.f1 * s.f1 + nsum * s.f1;
  T prod = (nu[0] + s.f1) * (nu[1] + s.f1) * (nu[2] + s.f1) * (nu[3] + s.f1);
  return sum_terms<T>({ts2 * ts2, T(0L) - mid * mid, T(4L) * prod});
}

// (t H'')^2 - (n(n+a+b) - H + (a+t) H')^2 - 4 H' (t H' - H)(b - H')
template <typename T>
ResidualReport<T> jacobi_h_form_residual(const Jet2<T>& h, const T& n, const T& a, const T& b) {
  T th2 = h.t * h.f2;
  T lin = n * (n + a + b) - h.f + (a + h.t) * h.f1;
  return sum_terms<T>(
      {th2 * th2, T(0L) - lin * lin, T(0L) - T(4L) * h.f1 * (h.t * h.f1 - h.f) * (b - h.f1)});
}

// --- jet transforms -----------------------------------------------------------

// y(t) = h(t) + t/2 - a^2/4
template <typename T>
Jet2<T> y_from_h(const Jet2<T>& h, const T& a) {
  return {h.t, h.f + h.t / T(2L) - a * a / T(4L), h.f1 + T(1L) / T(2L), h.f2};
}

// sigma(t) = -h(t/4) + t/8 + v1 v2 / 4; input jet must be based at t/4.
template <typename T>
Jet2<T> sigma_from_h(const Jet2<T>& h_quarter, const T& t, const T& v1, const T& v2) {
  return {t, T(0L) - h_quarter.f + t / T(8L) + v1 * v2 / T(4L),
          T(0L) - h_quarter.f1 / T(4L) + T(1L) / T(8L), T(0L) - h_quarter.f2 / T(16L)};
}

// sigma_hat_n(t) = -sigma(t/4) + t/8 + (n^2 - v^2)/4; input jet based at t/4.
template <typename T>
Jet2<T> sigmahat_from_sigma(const Jet2<T>& s_quarter, const T& t, const T& n, const T& v) {
  return {t, T(0L) - s_quarter.f + t / T(8L) + (n * n - v * v) / T(4L),
          T(0L) - s_quarter.f1 / T(4L) + T(1L) / T(8L), T(0L) - s_quarter.f2 / T(16L)};
}

// y(t) = -sigma_hat(4t) + t - (n+a) a / 2; input jet based at 4t.
template <typename T>
Jet2<T> y_from_sigmahat(const Jet2<T>& sh_quad, const T& t, const T& n, const T& a) {
  return {t, T(0L) - sh_quad.f + t - (n + a) * a / T(2L), T(0L) - T(4L) * sh_quad.f1 + T(1L),
          T(0L) - T(16L) * sh_quad.f2};
}

// (v1, v2) of the sigma-form satisfied by sigma_hat_n(.; v): (n+v, n-v).
template <typename T>
std::array<T, 2> params_sigma(const T& n, const T& v) {
  return {n + v, n - v};
}
// Average of e^{-t sum 1/lambda}: v = n + alpha, so (2n+alpha, -alpha).
template <typename T>
std::array<T, 2> params_mgf(const T& n, const T& alpha) {
  return {T(2L) * n + alpha, T(0L) - alpha};
}
// Hard-edge scaled variant: dimension alpha, order mu: (alpha+mu, alpha-mu).
template <typename T>
std::array<T, 2> params_hardedge(const T& alpha, const T& mu) {
  return {alpha + mu, alpha - mu};
}
// nu-quadruple of the degree-four sigma form, unit-interval weight case.
template <typename T>
std::array<T, 4> params_jacobi(const T& n, const T& alpha, const T& beta) {
  return {T(0L), T(0L) - (n + alpha + beta), n, T(0L) - beta};
}
// nu-quadruple of the degree-four sigma form, shifted-weight (gap) case.
template <typename T>
std::array<T, 4> params_gap(const T& n, const T& alpha, const T& mu) {
  return {T(0L), T(0L) - mu, n + alpha, n};
}

// --- numeric observables ------------------------------------------------------

struct ComplexJet2 {
  Real t;
  Complex f, f1, f2;
};

struct BesselCombination;  // bessel.hpp

// sigma_hat_n(t; v) = t/4 - v^2/2 - t (log det[L_{j-k+v}(sqrt t)])' with full
// second-order jet from the determinant trace formulas.
ComplexJet2 sigmahat_jet(const BesselCombination& c, const Real& v, long n, const Real& t,
                         const PrecisionContext& ctx);

struct BoundaryReport {
  Real constant_estimate;  // sigma_hat(t) - t/4 - (n/2) sqrt(t)
  Real reference;          // n^2/4 - v^2/2
  long bits_used = 0;
};

// Large-t behaviour of sigma_hat along the pure-K ray.
BoundaryReport boundary_constant(long n, const Real& v, const Real& t,
                                 const PrecisionContext& ctx);

}  // namespace ptau
