#include "ptau/bessel.hpp"

namespace ptau {

namespace {

constexpr double kLog2E = 1.4426950408889634;

// Ascending series sum_k (x/2)^{v+2k} / (k! Gamma(v+k+1)); requires that v is
// not a negative integer (no Gamma poles).  All terms are positive once
// k >= -v, so the only guard needed is headroom for the handful of
// alternating-sign terms a negative non-integer order contributes.
Real i_series(const Real& v, const Real& x) {
  long wp = working_precision() + 64;
  Real result;
  {
    PrecisionGuard g(wp);
    Real half_x = x / 2;
    Real q = half_x * half_x;
    Real term = pow(half_x, v) / gamma_fn(v + 1);
    Real sum = term;
    long k = 0;
    double hump = x.to_double() / 2;  // terms grow until roughly here
    while (true) {
      term = term * q / ((v + (k + 1)) * (k + 1));
      sum += term;
      ++k;
      if ((double)k > hump && !sum.is_zero() &&
          (term.is_zero() || abs(term).exponent() < sum.exponent() - wp - 8))
        break;
      if (k > 4000000) throw CertificationError("bessel_i: series did not converge");
    }
    result = sum;
  }
  return round_to_working(result);
}

// Divergent large-argument expansion K_v(x) ~ sqrt(pi/(2x)) e^{-x} sum a_k/x^k
// with a_k = prod_{j<=k} (4v^2-(2j-1)^2) / (k! 8^k).  Returns false when the
// terms stop shrinking before reaching the target (optimal truncation error
// ~e^{-2x} not small enough); the caller then falls back to the reflection
// formula.
bool k_asymptotic(const Real& v, const Real& x, long target_bits, Real* out) {
  bool ok = true;
  Real result;
  {
    PrecisionGuard g(target_bits + 64);
    Real sum(1L);
    Real term(1L);
    Real v2_4 = v * v * 4;
    Real x8 = x * 8;
    double vd = abs(v).to_double();
    long k = 0;
    long prev_e = LONG_MAX;
    while (true) {
      ++k;
      long j = 2 * k - 1;
      term = term * (v2_4 - Real(j * j)) / (x8 * k);
      sum += term;
      if (term.is_zero()) break;
      long e = abs(term).exponent() - sum.exponent();
      if (e < -(target_bits + 16)) break;
      if (e > prev_e && (double)k > vd + 1.0) {  // past the order hump and growing
        ok = false;
        break;
      }
      prev_e = e;
      if (k > 1000000) {
        ok = false;
        break;
      }
    }
    if (ok) result = sqrt(const_pi() / (x * 2)) * exp(-x) * sum;
  }
  if (ok) *out = result;
  return ok;
}

// K_v = (pi/2) (I_{-v} - I_v) / sin(pi v) for non-integer v, with guard bits
// for the e^{2x}-sized cancellation between the two I values and for the
// proportional shrinking of both numerator and denominator near integer v.
// The result carries ~out_bits of relative accuracy (at its own precision).
Real k_reflection(const Real& v, const Real& x, long out_bits) {
  double xd = x.to_double();
  long cancel = (long)(2.0 * xd * kLog2E) + 64;
  long near_int = 0;
  Real dist = dist_to_integer(v);
  if (dist.is_zero()) throw ValidationError("k_reflection: order must be non-integer");
  if (dist < Real(0.25)) near_int = -dist.exponent();
  long wp = out_bits + cancel + near_int + 64;
  Real r;
  {
    PrecisionGuard g(wp);
    Real im = i_series(-v, x);
    Real ip = i_series(v, x);
    Real m = round_nearest(v);
    Real s = sin(const_pi() * (v - m));  // sin(pi v) up to the parity of m
    if (m.to_long() % 2 != 0) s = -s;
    r = const_pi() / 2 * (im - ip) / s;
  }
  return r;
}

}  // namespace

Real bessel_i(const Real& v, const Real& x) {
  if (!(x > Real(0L))) throw ValidationError("bessel_i: argument must be positive");
  if (v.is_negative() && v.is_integer()) return i_series(-v, x);
  return i_series(v, x);
}

Real bessel_k(const Real& v0, const Real& x) {
  if (!(x > Real(0L))) throw ValidationError("bessel_k: argument must be positive");
  Real v = abs(v0);  // K is even in the order
  long out_bits = working_precision();
  double xd = x.to_double();

  // Large argument: the asymptotic expansion reaches the target long before
  // the reflection guard (which costs 2x*log2(e) extra bits) pays off.
  if (2.0 * xd * kLog2E > (double)(out_bits + 80)) {
    Real r;
    if (k_asymptotic(v, x, out_bits + 16, &r)) return round_to_working(r);
  }

  if (v.is_integer()) {
    // The reflection formula degenerates at integer order, but its value is
    // even in (v - m): average the two evaluations at v +- eps to cancel the
    // leading O(eps^2) error, at a working precision inflated enough that the
    // near-integer guard inside the reflection does not eat the accuracy.
    Real kp, km, eps;
    {
      PrecisionGuard g(2 * out_bits + 256);
      eps = ldexp2(Real(1L), -(out_bits / 2 + 8));
      kp = k_reflection(v + eps, x, out_bits + 32);
      km = k_reflection(v - eps, x, out_bits + 32);
    }
    Real r;
    {
      PrecisionGuard g(out_bits + 32);
      r = (kp + km) / 2;
    }
    return round_to_working(r);
  }

  return round_to_working(k_reflection(v, x, out_bits + 16));
}

Complex combo_l(const BesselCombination& c, const Real& v, const Real& x) {
  Complex r{Real(0L), Real(0L)};
  if (!c.a.is_zero()) r = r + Complex(c.a * bessel_i(v, x));
  if (!c.b.is_zero()) r = r + unit_phase_pi(v) * Complex(c.b * bessel_k(v, x));
  return r;
}

Complex combo_l_derivative(const BesselCombination& c, const Real& v, const Real& x) {
  return combo_l(c, v + 1, x) + combo_l(c, v, x) * Complex(v / x);
}

}  // namespace ptau
