#pragma once

// Order-by-order power-series solving of the quadratic-in-derivative ODEs
// satisfied by log-derivatives of the singular-moment generating function:
// exact finite-parameter cumulants, the large-parameter limit series, and
// conversions between them.  Everything here is exact (Q or Q(x)); floating
// point appears only in limit_mgf's final evaluation.
//
// Solving strategy, one unknown coefficient a_p at a time: probe the residual
// of the candidate series at a_p in {0,1,2,3}.  Each residual coefficient is
// at most quadratic in a single series coefficient when the others are held
// fixed, so three probes recover the coefficient equation
// c2*a^2 + c1*a + c0 = 0 and the fourth probe detects any higher-degree
// dependence (which would invalidate the recovery).  Scanning residual orders
// upward, the first order that involves a_p supplies its equation:
//   - linear (c2 = 0): a_p = -c0/c1; except that c0 = 0 combined with a
//     prefix that already solves the ODE exactly signals a collapsed
//     quadratic, i.e. a denominator of the generic-parameter solution
//     vanished (alpha^2 = 1 at p = 2, for instance), which is reported
//     rather than silently continued with the zero branch;
//   - quadratic with a double root: take it;
//   - quadratic with roots {0, x}: the zero root merely re-certifies an
//     exact polynomial prefix, so take x -- but only after checking that the
//     prefix really is an exact solution (otherwise the branch is ambiguous);
//   - anything else: report, never guess.
// A final pass re-evaluates the assembled series and requires the residual
// to vanish through every order that determined a coefficient.

#include <functional>
#include <string>
#include <vector>

#include "ptau/poly.hpp"
#include "ptau/real.hpp"
#include "ptau/series.hpp"

namespace ptau {

template <typename F>
bool series_is_zero(const Series<F>& s) {
  for (const auto& v : s.c)
    if (!is_zero_elem(v)) return false;
  return true;
}

// Raised when order-by-order solving cannot continue; `kind` says why.
struct SeriesSolveError : ValidationError {
  enum class Kind {
    branch_obstruction,    // two distinct viable roots at a determining order
    denominator_vanished,  // generic-parameter root collapsed at this parameter
    inconsistent,          // unsatisfiable coefficient equation
    underdetermined,       // scanned orders never constrain the unknown
    nonquadratic,          // dependence on one coefficient exceeds degree 2
  };
  Kind kind;
  SeriesSolveError(Kind k, const std::string& m) : ValidationError(m), kind(k) {}
};

// An implicit ODE presented as a residual functor on truncated power series.
// `residual` must map a series of order W to a series of order W-order_loss
// whose order-m coefficient is polynomial of degree <= 2 in any single input
// coefficient.  `seed` prescribes the leading coefficients c_0, c_1, ...
template <typename F>
struct SeriesOdeProblem {
  std::function<Series<F>(const Series<F>&)> residual;
  int order_loss = 1;
  std::vector<F> seed;
};

template <typename F>
Series<F> solve_series_ode(const SeriesOdeProblem<F>& prob, int p_max) {
  const int loss = prob.order_loss;
  const int known = static_cast<int>(prob.seed.size());
  if (known == 0) throw ValidationError("solve_series_ode: seed must fix the constant term");
  if (p_max < known - 1) throw ValidationError("solve_series_ode: requested order below seed length");

  std::vector<F> coeff(prob.seed);
  coeff.resize(static_cast<size_t>(p_max) + 1, F(0L));

  // Residual of the series whose coefficients are coeff[0..upto] followed by
  // zeros, carried to the given working order.
  auto residual_with = [&](int upto, int work) {
    Series<F> s(work);
    for (int k = 0; k <= upto && k <= work; ++k) s.c[k] = coeff[k];
    return prob.residual(s);
  };

  // Does the zero-extension of coeff[0..upto] solve the ODE exactly as a
  // polynomial?  The nonlinearities are at most cubic with low-degree
  // polynomial coefficients, so the residual of a degree-d prefix lives below
  // order 4d+8 and one wide evaluation decides.
  auto prefix_is_exact = [&](int upto) {
    const int wide = 4 * (upto + 1) + 8 + loss;
    return series_is_zero(residual_with(upto, wide));
  };

  int prev_det = -1;  // highest residual order consumed so far
  for (int p = known; p <= p_max; ++p) {
    const int cap = p + 3;
    const int work = cap + loss;
    std::vector<Series<F>> probe;
    for (long v = 0; v < 4; ++v) {
      coeff[p] = F(v);
      probe.push_back(residual_with(p, work));
    }
    coeff[p] = F(0L);

    bool determined = false;
    for (int m = prev_det + 1; m <= cap && !determined; ++m) {
      const F& r0 = probe[0].at(m);
      const F& r1 = probe[1].at(m);
      const F& r2 = probe[2].at(m);
      const F& r3 = probe[3].at(m);
      const F c2 = (r2 - r1 * F(2L) + r0) / F(2L);
      const F c1 = r1 - r0 - c2;
      if (!is_zero_elem(c2 * F(9L) + c1 * F(3L) + r0 - r3))
        throw SeriesSolveError(SeriesSolveError::Kind::nonquadratic,
                               "solve_series_ode: coefficient " + std::to_string(p) +
                                   " enters residual order " + std::to_string(m) +
                                   " at degree > 2");
      const bool c1_zero = is_zero_elem(c1);
      const bool c2_zero = is_zero_elem(c2);
      if (c1_zero && c2_zero) {
        // A nonzero residual order that no choice of a_p can cancel: for the
        // equations handled here this happens exactly when the parameter sits
        // on a pole of the generic-parameter coefficient (e.g. an integer
        // alpha resonance), so report it as a vanished denominator.
        if (!is_zero_elem(r0))
          throw SeriesSolveError(SeriesSolveError::Kind::denominator_vanished,
                                 "solve_series_ode: no admissible value for coefficient " +
                                     std::to_string(p) + " at order " + std::to_string(m) +
                                     " (parameter sits on a resonance of the recursion)");
        continue;  // this order imposes nothing on a_p
      }

      F root;
      if (c2_zero) {
        if (is_zero_elem(r0) && prefix_is_exact(p - 1))
          throw SeriesSolveError(SeriesSolveError::Kind::denominator_vanished,
                                 "solve_series_ode: coefficient " + std::to_string(p) +
                                     " has a collapsed quadratic at order " + std::to_string(m) +
                                     " (a generic-parameter denominator vanished)");
        root = -r0 / c1;
      } else {
        const F disc = c1 * c1 - c2 * r0 * F(4L);
        if (is_zero_elem(disc)) {
          root = -c1 / (c2 * F(2L));
        } else if (is_zero_elem(r0)) {
          if (!prefix_is_exact(p - 1))
            throw SeriesSolveError(SeriesSolveError::Kind::branch_obstruction,
                                   "solve_series_ode: coefficient " + std::to_string(p) +
                                       " has roots {0, -c1/c2} at order " + std::to_string(m) +
                                       " but the zero branch is not an exact solution");
          root = -c1 / c2;
        } else {
          throw SeriesSolveError(SeriesSolveError::Kind::branch_obstruction,
                                 "solve_series_ode: coefficient " + std::to_string(p) +
                                     " satisfies a quadratic with two distinct roots at order " +
                                     std::to_string(m));
        }
      }
      coeff[p] = root;
      prev_det = m;
      determined = true;
    }
    if (!determined)
      throw SeriesSolveError(SeriesSolveError::Kind::underdetermined,
                             "solve_series_ode: no residual order through " + std::to_string(cap) +
                                 " constrains coefficient " + std::to_string(p));
  }

  // Certification: the assembled series must annihilate the ODE through every
  // order that was used to determine a coefficient.
  if (prev_det >= 0) {
    const int wide = std::max(prev_det, p_max) + loss + 2;
    Series<F> res = residual_with(p_max, wide);
    for (int m = 0; m <= prev_det; ++m)
      if (!is_zero_elem(res.at(m)))
        throw SeriesSolveError(SeriesSolveError::Kind::inconsistent,
                               "solve_series_ode: assembled series fails the residual check at order " +
                                   std::to_string(m));
  }

  Series<F> out(p_max);
  for (int k = 0; k <= p_max; ++k) out.c[k] = coeff[k];
  return out;
}

// ------------------------------------------------------------ ODE residuals
// Each functor loses exactly one order.

// Finite-parameter equation for y(t) = t (d/dt) log M(t):
//   (t y'')^2 - (n - (2n+a) y')^2 + 4 (n(n+a) + t y' - y) y' (y' - 1) = 0.
template <typename F>
Series<F> y_ode_residual(const Series<F>& y, const F& n, const F& a) {
  const int W = y.order();
  Series<F> d1 = series_derivative(y);
  Series<F> td2 = series_shift_up(series_derivative(d1));
  Series<F> lin = Series<F>::constant(n, W - 1) - d1 * F(n * F(2L) + a);
  Series<F> big = Series<F>::constant(F(n * (n + a)), W) + series_shift_up(d1) - y;
  Series<F> d1m1 = d1 - Series<F>::constant(F(1L), W - 1);
  return td2 * td2 - lin * lin + big * d1 * d1m1 * F(4L);
}

// Limit equation for Y(t) = lim y(t/n):
//   (t Y'')^2 - 1 - a^2 (Y')^2 - 2a Y' + 4 (t Y' - Y) (Y')^2 = 0.
template <typename F>
Series<F> y_limit_ode_residual(const Series<F>& Y, const F& a) {
  const int W = Y.order();
  Series<F> d1 = series_derivative(Y);
  Series<F> td2 = series_shift_up(series_derivative(d1));
  Series<F> tdm = series_shift_up(d1) - Y;
  return td2 * td2 - Series<F>::constant(F(1L), W - 1) - d1 * d1 * F(a * a) -
         d1 * F(a * F(2L)) + tdm * d1 * d1 * F(4L);
}

// First-order flow for the diagonal (a = n) limit F(t):
//   2F + F' - 4tF' - 6t(F')^2 + 4FF' - 1 = 0.
template <typename F>
Series<F> f_ode_residual(const Series<F>& f) {
  const int W = f.order();
  Series<F> d1 = series_derivative(f);
  return f * F(2L) + d1 - series_shift_up(d1) * F(4L) - series_shift_up(d1 * d1) * F(6L) +
         f * d1 * F(4L) - Series<F>::constant(F(1L), W - 1);
}

// Companion quadratic form for the same F:
//   (1 - F')^2 - 4 F'(F' + 1)(t F' - F) = 0.
template <typename F>
Series<F> f_quad_residual(const Series<F>& f) {
  const int W = f.order();
  Series<F> d1 = series_derivative(f);
  Series<F> one = Series<F>::constant(F(1L), W - 1);
  Series<F> tdm = series_shift_up(d1) - f;
  return (one - d1) * (one - d1) - d1 * (d1 + one) * tdm * F(4L);
}

// Auxiliary identity equivalent to the compatibility of the two F equations:
//   (4 - 8F)F' - (F')^2 - 4F(F')^2 + 4t(F')^2 - 3 = 0.
template <typename F>
Series<F> f_aux_residual(const Series<F>& f) {
  const int W = f.order();
  Series<F> d1 = series_derivative(f);
  Series<F> d1sq = d1 * d1;
  return (Series<F>::constant(F(4L), W) - f * F(8L)) * d1 - d1sq - f * d1sq * F(4L) +
         series_shift_up(d1sq) * F(4L) - Series<F>::constant(F(3L), W - 1);
}

// Second-order equation for the hard-edge scaling function r(s):
//   s^2 (r'')^2 - 2s (r')^3 + ((8r - 1)/4)(r')^2 + 2a r' - 1 = 0.
template <typename F>
Series<F> r_ode_residual(const Series<F>& r, const F& a) {
  const int W = r.order();
  Series<F> d1 = series_derivative(r);
  Series<F> d2 = series_derivative(d1);
  Series<F> d1sq = d1 * d1;
  Series<F> weight = r * F(8L) - Series<F>::constant(F(1L), W);
  const F quarter = F(1L) / F(4L);
  return series_shift_up(series_shift_up(d2 * d2)) - series_shift_up(d1sq * d1) * F(2L) +
         weight * d1sq * quarter + d1 * F(a * F(2L)) -
         Series<F>::constant(F(1L), W - 1);
}

// Third-order equation satisfied by the same r(s) (parameter-free):
//   2s^2 r'r''' - s^2 (r'')^2 + 2s r'r'' - 4s (r')^3 + (2r - 1/4)(r')^2 + 1 = 0.
template <typename F>
Series<F> r_third_order_residual(const Series<F>& r) {
  const int W = r.order();
  if (W < 3) throw ValidationError("r_third_order_residual: series order must be >= 3");
  Series<F> d1 = series_derivative(r);
  Series<F> d2 = series_derivative(d1);
  Series<F> d3 = series_derivative(d2);
  Series<F> d1sq = d1 * d1;
  const F quarter = F(1L) / F(4L);
  return series_shift_up(series_shift_up(d1 * d3)) * F(2L) -
         series_shift_up(series_shift_up(d2 * d2)) + series_shift_up(d1 * d2) * F(2L) -
         series_shift_up(d1sq * d1) * F(4L) +
         (r * F(2L) - Series<F>::constant(quarter, W)) * d1sq +
         Series<F>::constant(F(1L), W - 1);
}

// -------------------------------------------------------------- public API

// Exact cumulants of the inverse-trace statistic at rational parameters.
struct CumulantSeries {
  Rat n, alpha;
  int order = 0;            // P
  std::vector<Rat> kappa;   // kappa[p], p = 1..P (index 0 unused)
  std::vector<Rat> a;       // t^p coefficients of y(t); kappa_p = (-1)^p (p-1)! a_p
  std::vector<bool> valid;  // valid[p] iff alpha > p-1 (moment integrability)
};

CumulantSeries cumulants_exact(const Rat& n, const Rat& alpha, int p_max, bool strict = false);

// Raw moments from cumulants (1-based layout matching CumulantSeries::kappa;
// slot 0 of the result is m_0 = 1).
std::vector<Rat> moments_from_cumulants(const std::vector<Rat>& kappa);

// y(t) series at fixed rational parameters; coefficient p is a_p.
Series<Rat> y_series_exact(const Rat& n, const Rat& alpha, int p_max);

// Same equation solved over Q(x), with n and alpha given as rational
// functions of x (use RatFunc::variable() for a symbolic parameter).
Series<RatFunc> y_series_symbolic(const RatFunc& n, const RatFunc& alpha, int p_max);

// Limit series solved directly from their own ODEs.
Series<Rat> y_limit_series(const Rat& alpha, int p_max);
Series<Rat> f_limit_series(int p_max);
Series<Rat> r_series(const Rat& alpha, int p_max);

// Limit series recovered instead from the finite-parameter solution over
// Q(x) by exact degree comparison: y_p = lim a_p(x)/x^p at fixed alpha, and
// f_p = lim (-1)^p a_p(x,x) x^{2p-2} on the diagonal alpha = n = x.
Series<Rat> y_limit_from_symbolic(const Rat& alpha, int p_max);
Series<Rat> f_limit_from_symbolic(int p_max);

// Truncated-series evaluation of lim M(t/n) = exp(sum_p y_p t^p / p).
// tol_achieved reports the size of the last retained term.
Certified limit_mgf(const Rat& alpha, const Real& t, int p_max, const PrecisionContext& ctx);

}  // namespace ptau
