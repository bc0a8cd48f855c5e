#include "ptau/detkit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ptau/discrete.hpp"
#include "ptau/oracle.hpp"

namespace ptau {

namespace {

// Relative tolerance passed to entry quadratures running at wp bits; double
// cannot express 2^-wp for large wp, so saturate well above the subnormal
// range (the determinant-level certification then scales with this floor).
double entry_tol(long wp) {
  long e = std::min(wp - 16L, 940L);
  return std::ldexp(1.0, -(int)e);
}

PrecisionContext entry_quad_ctx(const PrecisionContext& ctx) {
  long wp = working_precision() + 32;
  long cap = std::max(ctx.max_bits, 4 * wp);
  return PrecisionContext(wp, entry_tol(wp), cap);
}

Real max_rel(const Real& a, const Real& b) { return rel_diff(a, b); }
Real max_rel(const Complex& a, const Complex& b) { return rel_diff(a, b); }

// Evaluate `build` (value + dlog jets) at doubling precisions until all
// components agree to ctx.tol.
template <typename T, typename F>
DetResult<T> certified_det(const PrecisionContext& ctx, const char* method, F&& build) {
  long b = ctx.bits;
  std::pair<T, std::vector<T>> prev;
  {
    PrecisionGuard g(b);
    prev = build();
  }
  while (2 * b <= ctx.max_bits) {
    b *= 2;
    std::pair<T, std::vector<T>> cur;
    {
      PrecisionGuard g(b);
      cur = build();
    }
    bool ok = false;
    Real worst;
    {
      PrecisionGuard g(b);
      worst = max_rel(prev.first, cur.first);
      for (size_t i = 0; i < cur.second.size(); ++i) {
        Real d = max_rel(prev.second[i], cur.second[i]);
        if (d > worst) worst = d;
      }
      ok = worst <= Real(ctx.tol);
    }
    if (ok) return DetResult<T>{cur.first, cur.second, b, worst, method};
    prev = cur;
  }
  throw CertificationError(std::string(method) + ": no agreement to tol within max_bits");
}

void check_jet_order(int jet_order) {
  if (jet_order < 0 || jet_order > 3)
    throw ValidationError("jet_order must be between 0 and 3");
}

// Shared assembly for determinants whose entries depend on j, k only through
// j - k, with entry jets given by ladder expressions on a cached family.
template <typename Fam>
std::pair<typename Fam::value_type, std::vector<typename Fam::value_type>> banded_logdet(
    long n, int jet_order, const Real& v, const Real& u, const Fam& fam) {
  using T = typename Fam::value_type;
  std::vector<std::map<int, T>> val(jet_order + 1);  // shift -> entry derivative
  for (int s = -(int)(n - 1); s <= (int)(n - 1); ++s) {
    LadderExpr e = LadderExpr::entry(s);
    for (int r = 0; r <= jet_order; ++r) {
      val[r][s] = ladder_eval(e, u, fam);
      if (r < jet_order) e = ladder_ddt(e, v);
    }
  }
  Matrix<T> a(n, n);
  std::vector<Matrix<T>> derivs(jet_order, Matrix<T>(n, n));
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k) {
      a.at(j, k) = val[0][(int)(j - k)];
      for (int r = 1; r <= jet_order; ++r) derivs[r - 1].at(j, k) = val[r][(int)(j - k)];
    }
  auto jets = logdet_jets(a, derivs);
  return {jets.value, jets.dlog};
}

}  // namespace

Real moment_mu(long j, const Real& alpha, const Real& t) {
  if (t.is_negative()) throw ValidationError("moment_mu: t must be >= 0");
  Real order = alpha + (j + 1);
  if (t.is_zero()) return gamma_fn(order);
  Real root = sqrt(t);
  return 2 * pow(t, order / 2) * bessel_k(order, 2 * root);
}

DetResult<Real> hankel_det(long n, const Real& alpha, const Real& t, int jet_order,
                           const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("hankel_det: n must be >= 1");
  if (!(alpha > Real(-1L))) throw ValidationError("hankel_det: alpha must be > -1");
  if (t.is_negative()) throw ValidationError("hankel_det: t must be >= 0");
  check_jet_order(jet_order);
  if (t.is_zero() && jet_order > 0)
    throw ValidationError("hankel_det: entry jets at t = 0 are not defined");
  return certified_det<Real>(ctx, "hankel", [&]() {
    std::map<long, Real> mu;
    for (long m = -jet_order; m <= 2 * (n - 1); ++m) mu.emplace(m, moment_mu(m, alpha, t));
    Matrix<Real> a(n, n);
    std::vector<Matrix<Real>> derivs(jet_order, Matrix<Real>(n, n));
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        a.at(j, k) = mu.at(j + k);
        long sign = 1;
        for (int r = 1; r <= jet_order; ++r) {
          sign = -sign;
          derivs[r - 1].at(j, k) = sign > 0 ? mu.at(j + k - r) : -mu.at(j + k - r);
        }
      }
    auto jets = logdet_jets(a, derivs);
    return std::make_pair(jets.value, jets.dlog);
  });
}

DetResult<Complex> toeplitz_l_det(const BesselCombination& c, const Real& v, long n,
                                  const Real& t, int jet_order, const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("toeplitz_l_det: n must be >= 1");
  if (!(t > Real(0L))) throw ValidationError("toeplitz_l_det: t must be > 0");
  check_jet_order(jet_order);
  return certified_det<Complex>(ctx, "toeplitz", [&]() {
    Real u = sqrt(t);
    ComboFamily fam(c, v, u);
    return banded_logdet(n, jet_order, v, u, fam);
  });
}

DetResult<Complex> wronskian_det(const BesselCombination& c, const Real& v, long n,
                                 const Real& t, int jet_order, const Real& gauge_kappa,
                                 const PrecisionContext& ctx) {
  if (n < 0) throw ValidationError("wronskian_det: n must be >= 0");
  if (!(t > Real(0L))) throw ValidationError("wronskian_det: t must be > 0");
  check_jet_order(jet_order);
  if (n == 0) {
    DetResult<Complex> r{Complex(1L), {}, ctx.bits, Real(0L), "wronskian"};
    r.dlog.assign(jet_order, Complex(0L));
    return r;
  }
  DetResult<Complex> res = certified_det<Complex>(ctx, "wronskian", [&]() {
    int max_m = 2 * (int)(n - 1);
    auto table = delta_expansion<Real>(max_m, v, gauge_kappa);
    Real u = sqrt(t);
    ComboFamily fam(c, v, u);
    // Entry (j,k) = sum_m c_{j+k,m}(u) F_m, as a ladder expression so the
    // t-derivative jets are exact.
    std::vector<std::vector<Complex>> val(max_m + 1,
                                          std::vector<Complex>(jet_order + 1, Complex(0L)));
    for (int p = 0; p <= max_m; ++p) {
      LadderExpr e;
      for (int m = 0; m <= p; ++m) {
        const Poly<Real>& poly = table.table[p][m];
        for (int d = 0; d <= poly.degree(); ++d)
          if (!poly.c[d].is_zero()) e.add(d, m, poly.c[d]);
      }
      for (int r = 0; r <= jet_order; ++r) {
        val[p][r] = ladder_eval(e, u, fam);
        if (r < jet_order) e = ladder_ddt(e, v);
      }
    }
    Matrix<Complex> a(n, n);
    std::vector<Matrix<Complex>> derivs(jet_order, Matrix<Complex>(n, n));
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        a.at(j, k) = val[j + k][0];
        for (int r = 1; r <= jet_order; ++r) derivs[r - 1].at(j, k) = val[j + k][r];
      }
    auto jets = logdet_jets(a, derivs);
    // Reinstate the gauge prefactor t^{n kappa} on value and log-jets.
    Real nk = gauge_kappa * n;
    Complex value = jets.value * Complex(pow(t, nk));
    std::vector<Complex> dlog = jets.dlog;
    if (jet_order >= 1) dlog[0] = dlog[0] + Complex(nk / t);
    if (jet_order >= 2) dlog[1] = dlog[1] - Complex(nk / (t * t));
    if (jet_order >= 3) dlog[2] = dlog[2] + Complex(2 * nk / (t * t * t));
    return std::make_pair(value, dlog);
  });
  return res;
}

DetResult<Real> hard_edge_det(long a, const Real& mu, const Real& t, int jet_order,
                              const PrecisionContext& ctx) {
  if (a < 1) throw ValidationError("hard_edge_det: matrix dimension must be >= 1");
  if (!(mu > Real(-1L))) throw ValidationError("hard_edge_det: mu must be > -1");
  if (!(t > Real(0L))) throw ValidationError("hard_edge_det: t must be > 0");
  check_jet_order(jet_order);
  return certified_det<Real>(ctx, "hard_edge", [&]() {
    Real u = sqrt(t);
    IFamily fam(mu, u);
    auto [detval, dlog] = banded_logdet(a, jet_order, mu, u, fam);
    Real ma = mu * a;
    Real value = exp(-t / 4) * pow(t, -(ma / 2)) * detval;
    if (jet_order >= 1) dlog[0] = dlog[0] - Real(0.25) - ma / (2 * t);
    if (jet_order >= 2) dlog[1] = dlog[1] + ma / (2 * t * t);
    if (jet_order >= 3) dlog[2] = dlog[2] - ma / (t * t * t);
    return std::make_pair(value, dlog);
  });
}

namespace {

// b_m(t) = int_0^1 x^{m+alpha} (1-x)^beta e^{-t/x} dx
Real jacobi_entry(long m, const Real& alpha, const Real& beta, const Real& t,
                  const PrecisionContext& ctx) {
  Real ma = alpha + m;
  if (t.is_zero()) {
    if (!(ma > Real(-1L)))
      throw ValidationError("jacobi_hankel_det: entry moment diverges at t = 0");
    return gamma_fn(ma + 1) * gamma_fn(beta + 1) / gamma_fn(ma + beta + 2);
  }
  PrecisionContext qctx = entry_quad_ctx(ctx);
  return integrate_unit_interval(
             [&](const Real& x, const Real& omx) {
               return pow(x, ma) * pow(omx, beta) * exp(-t / x);
             },
             qctx)
      .value;
}

// g_m(s) = e^{-s} int_0^inf (s+x)^{m+alpha} x^mu e^{-x} dx
Real gap_entry(long m, const Real& alpha, const Real& mu, const Real& s,
               const PrecisionContext& ctx) {
  Real ma = alpha + m;
  if (s.is_zero() || (ma.is_integer() && !ma.is_negative())) {
    if (s.is_zero()) {
      if (!(ma + mu > Real(-1L)))
        throw ValidationError("gap_det: entry moment diverges at s = 0");
      return gamma_fn(ma + mu + 1);
    }
    // Binomial expansion: finite sum of Gamma values.
    long mi = ma.to_long();
    Real sum(0L);
    Real binom(1L);
    for (long k = 0; k <= mi; ++k) {
      sum += binom * pow(s, k) * gamma_fn(mu + (mi - k) + 1);
      binom = binom * (mi - k) / (k + 1);
    }
    return exp(-s) * sum;
  }
  PrecisionContext qctx = entry_quad_ctx(ctx);
  Real integral = integrate_zero_to_infinity(
                      [&](const Real& x) { return pow(s + x, ma) * pow(x, mu) * exp(-x); },
                      qctx)
                      .value;
  return exp(-s) * integral;
}

}  // namespace

DetResult<Real> jacobi_hankel_det(long n, const Real& alpha, const Real& beta, const Real& t,
                                  int jet_order, const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("jacobi_hankel_det: n must be >= 1");
  if (!(alpha > Real(-1L))) throw ValidationError("jacobi_hankel_det: alpha must be > -1");
  if (!(beta > Real(-1L))) throw ValidationError("jacobi_hankel_det: beta must be > -1");
  if (t.is_negative()) throw ValidationError("jacobi_hankel_det: t must be >= 0");
  check_jet_order(jet_order);
  if (t.is_zero() && jet_order > 0)
    throw ValidationError("jacobi_hankel_det: entry jets at t = 0 are not defined");
  return certified_det<Real>(ctx, "jacobi_hankel", [&]() {
    std::map<long, Real> bm;
    for (long m = -jet_order; m <= 2 * (n - 1); ++m)
      bm.emplace(m, jacobi_entry(m, alpha, beta, t, ctx));
    Matrix<Real> a(n, n);
    std::vector<Matrix<Real>> derivs(jet_order, Matrix<Real>(n, n));
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        a.at(j, k) = bm.at(j + k);
        long sign = 1;
        for (int r = 1; r <= jet_order; ++r) {
          sign = -sign;  // b_m' = -b_{m-1}
          derivs[r - 1].at(j, k) = sign > 0 ? bm.at(j + k - r) : -bm.at(j + k - r);
        }
      }
    auto jets = logdet_jets(a, derivs);
    return std::make_pair(jets.value, jets.dlog);
  });
}

DetResult<Real> gap_det(long n, const Real& alpha, const Real& mu, const Real& s,
                        int jet_order, const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("gap_det: n must be >= 1");
  if (!(alpha > Real(-1L))) throw ValidationError("gap_det: alpha must be > -1");
  if (!(mu > Real(-1L))) throw ValidationError("gap_det: mu must be > -1");
  if (s.is_negative()) throw ValidationError("gap_det: s must be >= 0");
  check_jet_order(jet_order);
  if (s.is_zero() && jet_order > 0)
    throw ValidationError("gap_det: entry jets at s = 0 are not defined");
  return certified_det<Real>(ctx, "gap", [&]() {
    std::map<long, Real> gm;
    for (long m = -jet_order; m <= 2 * (n - 1); ++m)
      gm.emplace(m, gap_entry(m, alpha, mu, s, ctx));
    // g_m' = (m+alpha) g_{m-1} - g_m, applied recursively for higher jets.
    auto dg = [&](auto&& self, int r, long m) -> Real {
      if (r == 0) return gm.at(m);
      return (alpha + m) * self(self, r - 1, m - 1) - self(self, r - 1, m);
    };
    Matrix<Real> a(n, n);
    std::vector<Matrix<Real>> derivs(jet_order, Matrix<Real>(n, n));
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        a.at(j, k) = gm.at(j + k);
        for (int r = 1; r <= jet_order; ++r) derivs[r - 1].at(j, k) = dg(dg, r, j + k);
      }
    auto jets = logdet_jets(a, derivs);
    return std::make_pair(jets.value, jets.dlog);
  });
}

const std::vector<std::string>& mgf_methods() {
  static const std::vector<std::string> m{"hankel", "toeplitz", "toda", "dpii", "quadrature"};
  return m;
}

Certified mgf(long n, const Real& alpha, const Real& t, const std::string& method,
              const PrecisionContext& ctx) {
  if (n < 0) throw ValidationError("mgf: n must be >= 0");
  if (!(alpha > Real(-1L))) throw ValidationError("mgf: alpha must be > -1");
  if (t.is_negative()) throw ValidationError("mgf: t must be >= 0");
  if (method == "toda") return mgf_toda(n, alpha, t, ctx);
  if (method == "dpii") return mgf_dpii(n, alpha, t, ctx);
  if (method == "quadrature") return mgf_quadrature(n, alpha, t, ctx);
  if (method != "hankel" && method != "toeplitz")
    throw ValidationError("mgf: unknown method '" + method + "'");
  if (n == 0 || t.is_zero()) return Certified{Real(1L), ctx.bits, Real(0L)};
  return certify(ctx, [&]() {
    Real d;
    if (method == "hankel") {
      Matrix<Real> a(n, n);
      std::map<long, Real> mu;
      for (long m = 0; m <= 2 * (n - 1); ++m) mu.emplace(m, moment_mu(m, alpha, t));
      for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) a.at(j, k) = mu.at(j + k);
      d = det(a);
    } else {
      Real x = 2 * sqrt(t);
      KFamily fam(alpha + n, x);
      Matrix<Real> a(n, n);
      for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) a.at(j, k) = fam.at((int)(j - k));
      d = det(a);
      d = d * pow(Real(2L), n) * pow(t, (alpha + n) * n / 2);
      if (((n * (n - 1) / 2) % 2) != 0) d = -d;
    }
    return gamma_fn(Real(n + 1)) * d / lue_normalization(n, alpha);
  });
}

}  // namespace ptau
