#include "ptau/quadrature.hpp"

#include <vector>

namespace ptau {

namespace {

// One abscissa of the transformed integrand: returns f(x(u)) * x'(u), or zero
// when the map has underflowed past anything representable.
struct HalfLineMap {
  // x = exp(u - e^{-u}), x' = x * (1 + e^{-u})
  static Real term(const std::function<Real(const Real&)>& f, const Real& u) {
    Real eu = exp(-u);
    if (eu.is_inf()) return Real(0);
    Real x = exp(u - eu);
    if (x.is_zero() || x.is_inf()) return Real(0);
    Real w = x * (1 + eu);
    Real v = f(x) * w;
    if (v.is_nan() || v.is_inf()) return Real(0);  // past representability
    return v;
  }
};

struct UnitIntervalMap {
  // x = 1/(1+e^{-2y}), 1-x = 1/(1+e^{2y}), y = (pi/2) sinh u,
  // dx/du = 2 x (1-x) (pi/2) cosh u
  static Real term(const std::function<Real(const Real&, const Real&)>& f, const Real& u) {
    Real half_pi = const_pi() / 2;
    Real y2 = 2 * (half_pi * sinh(u));
    Real em = exp(-y2), ep = exp(y2);
    if (em.is_inf() || ep.is_inf()) return Real(0);
    Real x = 1 / (1 + em);
    Real omx = 1 / (1 + ep);
    if (x.is_zero() || omx.is_zero()) return Real(0);
    Real w = 2 * x * omx * half_pi * cosh(u);
    Real v = f(x, omx) * w;
    if (v.is_nan() || v.is_inf()) return Real(0);
    return v;
  }
};

// Sum a trapezoid row at points u = off + k*step, k = 0, 1, 2, ... in one
// direction, stopping once several consecutive terms are negligible against
// the largest term seen.  "negligible" is 2^-(guard) relative.
template <typename TermFn>
Real sum_direction(const TermFn& term, const Real& off, const Real& step, long guard,
                   long* points) {
  Real sum(0);
  Real peak(0);
  int tiny_run = 0;
  const int tiny_needed = 4;
  for (long k = 0;; ++k) {
    Real u = off + step * k;
    Real v = term(u);
    sum += v;
    Real a = abs(v);
    if (a > peak) peak = a;
    ++*points;
    bool negligible = (!peak.is_zero() && (a.is_zero() || a.exponent() < peak.exponent() - guard)) ||
                      (a.is_zero() && k >= 32);
    if (negligible) {
      if (++tiny_run >= tiny_needed) break;
    } else {
      tiny_run = 0;
    }
    if (k > 4000000) throw CertificationError("quadrature: truncation stall");
  }
  return sum;
}

template <typename TermFn>
QuadResult de_run(const TermFn& term, const PrecisionContext& ctx) {
  long wp = ctx.bits + 64;
  for (;;) {
    PrecisionGuard g(wp);
    long guard = wp + 16;
    long points = 0;
    Real h = Real(1) / 2;
    // Level 0: u = 0, +-h, +-2h, ...
    Real row = sum_direction(term, Real(0), h, guard, &points) +
               sum_direction(term, -h, -h, guard, &points);
    Real integral = row * h;
    Real prev_integral = integral;
    Real err;
    bool converged = false;
    int level = 1;
    const int max_levels = 16;
    for (; level <= max_levels; ++level) {
      h = h / 2;
      // New points at odd multiples of the halved step.
      Real odd = sum_direction(term, h, 2 * h, guard, &points) +
                 sum_direction(term, -h, -2 * h, guard, &points);
      integral = prev_integral / 2 + odd * h;
      err = abs(integral - prev_integral);
      Real scale = abs(integral);
      if (scale.is_zero()) scale = Real(1);
      if (level >= 2 && err <= Real(ctx.tol) * scale) {
        converged = true;
        break;
      }
      prev_integral = integral;
    }
    if (converged) {
      QuadResult r;
      r.value = integral;
      r.abs_err = err;
      r.levels = level;
      r.points = points;
      r.bits_used = wp;
      return r;
    }
    long next = 2 * (wp - 64) + 64;
    if (2 * (wp - 64) > ctx.max_bits)
      throw CertificationError("quadrature: no convergence within max_bits");
    wp = next;
  }
}

}  // namespace

QuadResult integrate_zero_to_infinity(const std::function<Real(const Real&)>& f,
                                      const PrecisionContext& ctx) {
  auto term = [&f](const Real& u) { return HalfLineMap::term(f, u); };
  return de_run(term, ctx);
}

QuadResult integrate_unit_interval(const std::function<Real(const Real&, const Real&)>& f,
                                   const PrecisionContext& ctx) {
  auto term = [&f](const Real& u) { return UnitIntervalMap::term(f, u); };
  return de_run(term, ctx);
}

Real lue_normalization(long n, const Real& alpha) {
  if (n < 0) throw ValidationError("lue_normalization: n must be >= 0");
  Real c(1);
  Real fact(1);
  for (long j = 1; j <= n; ++j) {
    fact *= j;  // j!
    c *= fact * gamma_fn(alpha + j);
  }
  return c;
}

}  // namespace ptau
