#include "ptau/discrete.hpp"

#include <utility>

#include "ptau/detkit.hpp"
#include "ptau/series.hpp"

namespace ptau {

namespace {

bool nearly_zero(const Complex& z, const Real& scale) {
  // exact zero or catastrophically small against the given scale
  Real a = abs(z);
  if (a.is_zero()) return true;
  return !scale.is_zero() && a.exponent() < scale.exponent() - (working_precision() - 8);
}

}  // namespace

RecurrenceState recurrence_seed(const BesselCombination& c, const Real& v, const Real& t) {
  if (!(t > Real(0L))) throw ValidationError("recurrence_seed: t must be > 0");
  Real root = sqrt(t);
  Real x = 2 * root;
  Complex num = combo_l(c, v + 1, x);
  Complex den = combo_l(c, v, x);
  if (nearly_zero(den, abs(num)))
    throw ValidationError("recurrence_seed: L_v vanishes at this argument");
  return RecurrenceState{0, Complex(0L), Complex(root) * (num / den), v, t};
}

RecurrenceState recurrence_step(const RecurrenceState& s) {
  const Complex& p = s.p;
  const Complex& q = s.q;
  Complex t(s.t);
  Complex v(s.v);
  if (nearly_zero(q, Real(1L))) throw ValidationError("recurrence_step: q vanished");
  Complex p_next = q * q / t * (p - Complex(1L)) - v * q / t + Complex(1L);
  Complex den = q * (q * (p - Complex(1L)) - v) + t;
  if (nearly_zero(den, abs(t))) throw ValidationError("recurrence_step: denominator vanished");
  Complex q_next = -t / q + Complex(Real((s.n + 1))) * t / den;
  return RecurrenceState{s.n + 1, p_next, q_next, s.v, s.t};
}

Complex recurrence_back(const RecurrenceState& s) {
  if (s.n < 1) throw ValidationError("recurrence_back: needs n >= 1");
  if (nearly_zero(s.p, Real(1L))) throw ValidationError("recurrence_back: p vanished");
  Complex den = Complex(Real(s.n)) / s.p - s.q;
  if (nearly_zero(den, abs(s.q))) throw ValidationError("recurrence_back: denominator vanished");
  return Complex(s.t) / den;
}

RelationReport alt_recurrence_residual(const Complex& q_prev, const Complex& q_cur,
                                       const Complex& q_next, long n, const Real& v,
                                       const Real& t) {
  Complex tc(t);
  std::vector<Complex> terms;
  terms.push_back(Complex(Real(n + 1)) / (q_cur * q_next + tc));
  if (n > 0) terms.push_back(Complex(Real(n)) / (q_cur * q_prev + tc));
  terms.push_back(-(Complex(1L) / q_cur));
  terms.push_back(q_cur / tc);
  terms.push_back(-Complex((Real(n) - v) / t));
  Complex resid(0L);
  Real scale(0L);
  for (const Complex& z : terms) {
    resid += z;
    scale += abs(z);
  }
  Real relative = scale.is_zero() ? abs(resid) : abs(resid) / scale;
  return RelationReport{resid, scale, relative};
}

RelationReport alt_recurrence_check(const BesselCombination& c, const Real& v, long n,
                                    const Real& t) {
  if (n < 0) throw ValidationError("alt_recurrence_check: n must be >= 0");
  RecurrenceState s = recurrence_seed(c, v, t);
  Complex q_prev(0L), q_cur = s.q;
  for (long k = 0; k < n; ++k) {
    s = recurrence_step(s);
    q_prev = q_cur;
    q_cur = s.q;
  }
  RecurrenceState next = recurrence_step(s);
  return alt_recurrence_residual(q_prev, q_cur, next.q, n, v, t);
}

RelationReport pq_coupling_check(const BesselCombination& c, const Real& v, long n,
                                 const Real& t) {
  if (n < 0) throw ValidationError("pq_coupling_check: n must be >= 0");
  RecurrenceState s = recurrence_seed(c, v, t);
  for (long k = 0; k < n; ++k) s = recurrence_step(s);
  Complex q_n = s.q;
  RecurrenceState nx = recurrence_step(s);
  std::vector<Complex> terms{nx.q, Complex(t) / q_n, -(Complex(Real(n + 1)) / nx.p)};
  Complex resid(0L);
  Real scale(0L);
  for (const Complex& z : terms) {
    resid += z;
    scale += abs(z);
  }
  Real relative = scale.is_zero() ? abs(resid) : abs(resid) / scale;
  return RelationReport{resid, scale, relative};
}

TodaReport toda_verify(const BesselCombination& c, const Real& v, long n, const Real& t,
                       const Real& gauge_kappa, const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("toda_verify: n must be >= 1");
  DetResult<Complex> lo = wronskian_det(c, v, n - 1, t, 0, gauge_kappa, ctx);
  DetResult<Complex> mid = wronskian_det(c, v, n, t, 2, gauge_kappa, ctx);
  DetResult<Complex> hi = wronskian_det(c, v, n + 1, t, 0, gauge_kappa, ctx);
  Complex tc(t);
  Complex lhs = tc * mid.dlog[0] + tc * tc * mid.dlog[1];  // delta^2 log tau_n
  Complex rhs = lo.value * hi.value / (mid.value * mid.value);
  TodaReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.relative = rel_diff(lhs, rhs);
  r.bits_used = std::max(lo.bits_used, std::max(mid.bits_used, hi.bits_used));
  return r;
}

Certified mgf_toda(long n, const Real& alpha, const Real& t, const PrecisionContext& ctx) {
  if (n < 0) throw ValidationError("mgf_toda: n must be >= 0");
  if (!(alpha > Real(-1L))) throw ValidationError("mgf_toda: alpha must be > -1");
  if (t.is_negative()) throw ValidationError("mgf_toda: t must be >= 0");
  if (n == 0 || t.is_zero()) return Certified{Real(1L), ctx.bits, Real(0L)};
  return certify(ctx, [&]() {
    // tau-sequence G[k] in log-argument jets at s0 = 4t, seeded by the
    // delta-expansion of the first determinant; each lattice step
    //   G[k+1] = G[k]^2 (log G[k])'' / G[k-1]   ('' in w = log s)
    // costs two orders of contact, so seed with 2(n-1).
    int max_m = 2 * (int)(n - 1);
    Real v = alpha + n;
    Real s0 = 4 * t;
    Real u0 = sqrt(s0);
    auto table = delta_expansion<Real>(max_m, v);
    KFamily fam(v, u0, -1);  // alternating-sign K family keeps everything real
    Series<Real> g1(max_m);
    Real fact(1L);
    for (int m = 0; m <= max_m; ++m) {
      if (m > 0) fact *= m;
      g1.c[m] = delta_eval(table, m, u0, fam) / fact;
    }
    Series<Real> g0 = Series<Real>::constant(Real(1L), max_m);
    Series<Real> cur = g1, prev = g0;
    for (long k = 1; k < n; ++k) {
      Series<Real> next = cur * cur * series_dlog2(cur) / prev;
      prev = cur;
      cur = next;
    }
    Real g_n = cur.c[0];
    // det[K_{j-k+v}(2 sqrt t)] = G[n](4t) / t^{n(n-1)/2}
    Real d = g_n * pow(Real(2L), n) * pow(t, (alpha + n) * n / 2 - Real(n * (n - 1)) / 2);
    if (((n * (n - 1) / 2) % 2) != 0) d = -d;
    return gamma_fn(Real(n + 1)) * d / lue_normalization(n, alpha);
  });
}

Certified mgf_dpii(long n, const Real& alpha, const Real& t, const PrecisionContext& ctx) {
  if (n < 0) throw ValidationError("mgf_dpii: n must be >= 0");
  if (!(alpha > Real(-1L))) throw ValidationError("mgf_dpii: alpha must be > -1");
  if (t.is_negative()) throw ValidationError("mgf_dpii: t must be >= 0");
  if (n == 0 || t.is_zero()) return Certified{Real(1L), ctx.bits, Real(0L)};
  return certify(ctx, [&]() {
    // T_N = prod_{k=0}^{N-1} r_k with r_0 = K_v(2 sqrt t) and r_k = p_k r_{k-1}:
    // the scalar recurrence tracks the ratio ladder of the shifted-order
    // Toeplitz determinants at fixed v = n + alpha.
    Real v = alpha + n;
    Real x = 2 * sqrt(t);
    Real kv = bessel_k(v, x);
    Real kv1 = bessel_k(v + 1, x);
    Real root = sqrt(t);
    Real p(0L), q = -(root * kv1 / kv);
    Real r = kv;
    Real det_val(1L);
    for (long k = 0; k < n; ++k) {
      det_val *= r;
      if (k + 1 == n) break;
      // real specialization of recurrence_step
      if (q.is_zero()) throw ValidationError("mgf_dpii: q vanished");
      Real p_next = q * q / t * (p - 1) - v * q / t + 1;
      Real den = q * (q * (p - 1) - v) + t;
      if (den.is_zero()) throw ValidationError("mgf_dpii: denominator vanished");
      Real q_next = -(t / q) + (k + 1) * t / den;
      p = p_next;
      q = q_next;
      r = p * r;
    }
    Real d = det_val * pow(Real(2L), n) * pow(t, (alpha + n) * n / 2);
    if (((n * (n - 1) / 2) % 2) != 0) d = -d;
    return gamma_fn(Real(n + 1)) * d / lue_normalization(n, alpha);
  });
}

}  // namespace ptau
