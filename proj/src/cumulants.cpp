#include "ptau/cumulants.hpp"

namespace ptau {

namespace {

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  return rat_factorial(n) / (rat_factorial(k) * rat_factorial(n - k));
}

}  // namespace

Series<Rat> y_series_exact(const Rat& n, const Rat& alpha, int p_max) {
  if (alpha == 0) throw ValidationError("y_series_exact: alpha must be nonzero");
  SeriesOdeProblem<Rat> prob;
  prob.order_loss = 1;
  prob.seed = {Rat(0)};
  prob.residual = [n, alpha](const Series<Rat>& y) { return y_ode_residual<Rat>(y, n, alpha); };
  return solve_series_ode(prob, p_max);
}

Series<RatFunc> y_series_symbolic(const RatFunc& n, const RatFunc& alpha, int p_max) {
  if (alpha.is_zero()) throw ValidationError("y_series_symbolic: alpha must be nonzero");
  SeriesOdeProblem<RatFunc> prob;
  prob.order_loss = 1;
  prob.seed = {RatFunc(0L)};
  prob.residual = [n, alpha](const Series<RatFunc>& y) {
    return y_ode_residual<RatFunc>(y, n, alpha);
  };
  return solve_series_ode(prob, p_max);
}

CumulantSeries cumulants_exact(const Rat& n, const Rat& alpha, int p_max, bool strict) {
  if (p_max < 1) throw ValidationError("cumulants_exact: order must be >= 1");
  if (alpha == 0) throw ValidationError("cumulants_exact: alpha must be nonzero");
  if (strict && !(alpha > Rat(p_max - 1)))
    throw ValidationError("cumulants_exact: strict mode requires alpha > order-1");

  Series<Rat> y = y_series_exact(n, alpha, p_max);
  CumulantSeries out;
  out.n = n;
  out.alpha = alpha;
  out.order = p_max;
  out.a.assign(p_max + 1, Rat(0));
  out.kappa.assign(p_max + 1, Rat(0));
  out.valid.assign(p_max + 1, false);
  Rat fact(1);  // (p-1)!
  for (int p = 1; p <= p_max; ++p) {
    if (p >= 2) fact *= p - 1;
    out.a[p] = y.at(p);
    out.kappa[p] = (p % 2 ? -fact : fact) * y.at(p);
    out.valid[p] = alpha > Rat(p - 1);
  }
  return out;
}

std::vector<Rat> moments_from_cumulants(const std::vector<Rat>& kappa) {
  if (kappa.empty()) throw ValidationError("moments_from_cumulants: empty input");
  const size_t P = kappa.size() - 1;
  std::vector<Rat> m(P + 1, Rat(0));
  m[0] = 1;
  for (size_t k = 1; k <= P; ++k)
    for (size_t j = 1; j <= k; ++j)
      m[k] += binomial(static_cast<long>(k) - 1, static_cast<long>(j) - 1) * kappa[j] * m[k - j];
  return m;
}

Series<Rat> y_limit_series(const Rat& alpha, int p_max) {
  if (alpha == 0) throw ValidationError("y_limit_series: alpha must be nonzero");
  SeriesOdeProblem<Rat> prob;
  prob.order_loss = 1;
  prob.seed = {Rat(0)};
  prob.residual = [alpha](const Series<Rat>& Y) { return y_limit_ode_residual<Rat>(Y, alpha); };
  return solve_series_ode(prob, p_max);
}

Series<Rat> f_limit_series(int p_max) {
  SeriesOdeProblem<Rat> prob;
  prob.order_loss = 1;
  prob.seed = {Rat(0)};
  prob.residual = [](const Series<Rat>& f) { return f_ode_residual<Rat>(f); };
  return solve_series_ode(prob, p_max);
}

Series<Rat> r_series(const Rat& alpha, int p_max) {
  if (alpha == 0) throw ValidationError("r_series: alpha must be nonzero");
  SeriesOdeProblem<Rat> prob;
  prob.order_loss = 1;
  prob.seed = {(Rat(1) - Rat(4) * alpha * alpha) / Rat(8)};
  prob.residual = [alpha](const Series<Rat>& r) { return r_ode_residual<Rat>(r, alpha); };
  Series<Rat> sol = solve_series_ode(prob, p_max);
  // The second-order solution must also annihilate the third-order companion
  // equation; certify that before handing it out.
  if (p_max >= 3 && !series_is_zero(r_third_order_residual(sol)))
    throw SeriesSolveError(SeriesSolveError::Kind::inconsistent,
                           "r_series: solution fails the third-order companion equation");
  return sol;
}

Series<Rat> y_limit_from_symbolic(const Rat& alpha, int p_max) {
  Series<RatFunc> a = y_series_symbolic(RatFunc::variable(), RatFunc(alpha), p_max);
  Series<Rat> out(p_max);
  for (int p = 1; p <= p_max; ++p) out.c[p] = limit_at_infinity_scaled(a.at(p), p);
  return out;
}

Series<Rat> f_limit_from_symbolic(int p_max) {
  const RatFunc x = RatFunc::variable();
  Series<RatFunc> a = y_series_symbolic(x, x, p_max);
  Series<Rat> out(p_max);
  for (int p = 1; p <= p_max; ++p) {
    Rat v = limit_at_infinity_scaled(a.at(p), -(2L * p - 2L));
    out.c[p] = p % 2 ? -v : v;
  }
  return out;
}

Certified limit_mgf(const Rat& alpha, const Real& t, int p_max, const PrecisionContext& ctx) {
  if (p_max < 2) throw ValidationError("limit_mgf: order must be >= 2");
  if (t.is_negative()) throw ValidationError("limit_mgf: t must be >= 0");
  PrecisionGuard guard(ctx.bits);
  if (t.is_zero()) return Certified{Real(1L), ctx.bits, Real(0L)};

  // Integer alpha puts a pole of some y_p at the parameter (the recursion
  // resonates at p = alpha + 1); keep the orders below it rather than fail,
  // and let tol_achieved report the coarser truncation.
  Series<Rat> y = Series<Rat>::constant(Rat(0), 0);
  int p_used = p_max;
  for (;; --p_used) {
    try {
      y = y_limit_series(alpha, p_used);
      break;
    } catch (const SeriesSolveError& e) {
      if (e.kind != SeriesSolveError::Kind::denominator_vanished || p_used <= 2) throw;
    }
  }
  Real sum(0L), last(0L), prev(0L), tp(1L);
  for (int p = 1; p <= p_used; ++p) {
    tp = tp * t;
    prev = last;
    last = to_real(y.at(p)) * tp / Real(static_cast<long>(p));
    sum = sum + last;
  }
  Real value = exp(sum);
  Real tail = abs(last) / (abs(sum) + Real(1L));
  if (abs(last) > abs(prev) && tail > Real(ctx.tol))
    throw CertificationError("limit_mgf: truncated series is not converging at this t");
  return Certified{value, ctx.bits, tail};
}

}  // namespace ptau
