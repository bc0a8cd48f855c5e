#include "ptau/oracle.hpp"

#include <cmath>
#include <map>

#include "ptau/linalg.hpp"

namespace ptau {

Real moment_quadrature(long m, const Real& alpha, const Real& t, const PrecisionContext& ctx) {
  if (t.is_negative()) throw ValidationError("moment_quadrature: t must be >= 0");
  Real e = alpha + m;
  if (t.is_zero() && !(e > Real(-1L)))
    throw ValidationError("moment_quadrature: moment diverges at t = 0");
  return integrate_zero_to_infinity(
             [&](const Real& x) {
               Real w = pow(x, e) * exp(-x);
               if (!t.is_zero()) w *= exp(-(t / x));
               return w;
             },
             ctx)
      .value;
}

Certified mgf_quadrature(long n, const Real& alpha, const Real& t, const PrecisionContext& ctx) {
  if (n < 0 || n > 8)
    throw ValidationError("mgf_quadrature: n must be between 0 and 8 (brute-force path)");
  if (!(alpha > Real(-1L))) throw ValidationError("mgf_quadrature: alpha must be > -1");
  if (t.is_negative()) throw ValidationError("mgf_quadrature: t must be >= 0");
  if (n == 0 || t.is_zero()) return Certified{Real(1L), ctx.bits, Real(0L)};
  return certify(ctx, [&]() {
    long wp = working_precision();
    PrecisionContext qctx(wp + 32, std::ldexp(1.0, -(int)std::min(wp - 8, 900L)),
                          std::max(ctx.max_bits, 4 * (wp + 32)));
    Matrix<Real> a(n, n), a0(n, n);
    std::map<long, Real> mt, m0;
    for (long m = 0; m <= 2 * (n - 1); ++m) {
      mt.emplace(m, moment_quadrature(m, alpha, t, qctx));
      m0.emplace(m, gamma_fn(alpha + (m + 1)));
    }
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        a.at(j, k) = mt.at(j + k);
        a0.at(j, k) = m0.at(j + k);
      }
    return det(a) / det(a0);
  });
}

Real kappa3_reference(long n, const Real& alpha, const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("kappa3_reference: n must be >= 1");
  if (!(alpha > Real(2L)))
    throw ValidationError("kappa3_reference: needs alpha > 2 (third entry jets at t = 0)");
  // Moment matrix at t = 0 is exact: m_j = Gamma(j + alpha + 1), with
  // d^r/dt^r m_j = (-1)^r m_{j-r}; kappa_3 = -(log det)'''(0).
  Certified c = certify(ctx, [&]() {
    Matrix<Real> a(n, n);
    std::vector<Matrix<Real>> derivs(3, Matrix<Real>(n, n));
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        a.at(j, k) = gamma_fn(alpha + (j + k + 1));
        for (int r = 1; r <= 3; ++r) {
          Real g = gamma_fn(alpha + (j + k - r + 1));
          derivs[r - 1].at(j, k) = (r % 2 != 0) ? -g : g;
        }
      }
    auto jets = logdet_jets(a, derivs);
    return -jets.dlog[2];
  });
  return c.value;
}

// --- Monte Carlo -------------------------------------------------------------

namespace {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform in the open interval (0, 1)
  double uniform() { return ((double)(next() >> 11) + 0.5) * 0x1.0p-53; }
};

// Regularized lower incomplete gamma P(a, x), double precision.
double gammp(double a, double x) {
  if (x <= 0) return 0.0;
  if (x < a + 1.0) {
    // ascending series for P
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // continued fraction for Q (modified Lentz)
  double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -1.0 * i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

// Inverse CDF of Gamma(a, 1) by bisection on P(a, x) = u.
double gamma_inverse_cdf(double a, double u) {
  double lo = 0.0, hi = a + 10.0 * std::sqrt(a) + 10.0;
  while (gammp(a, hi) < u) hi *= 2.0;
  for (int i = 0; i < 120; ++i) {
    double mid = 0.5 * (lo + hi);
    if (gammp(a, mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Eigenvalue count below x for the symmetric tridiagonal (diag, off).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int cnt = 0;
  double q = diag[0] - x;
  if (q < 0) ++cnt;
  for (size_t i = 1; i < diag.size(); ++i) {
    if (q == 0.0) q = 1e-300;
    q = (diag[i] - x) - off[i - 1] * off[i - 1] / q;
    if (q < 0) ++cnt;
  }
  return cnt;
}

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off) {
  size_t n = diag.size();
  double lo = diag[0], hi = diag[0];
  for (size_t i = 0; i < n; ++i) {
    double r = 0;
    if (i > 0) r += std::fabs(off[i - 1]);
    if (i + 1 < n) r += std::fabs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  std::vector<double> eig(n);
  for (size_t k = 0; k < n; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (a + b);
      if (sturm_count(diag, off, mid) <= (int)k)
        a = mid;
      else
        b = mid;
    }
    eig[k] = 0.5 * (a + b);
  }
  return eig;
}

std::vector<double> draw_eigenvalues(long n, double alpha, SplitMix64& rng) {
  // Lower-bidiagonal model: diagonal d_i with d_i^2 ~ Gamma(n + alpha - i + 1),
  // subdiagonal e_i with e_i^2 ~ Gamma(n - i); A = B B^T has the target
  // density prop. to prod lambda^alpha e^{-lambda} times the squared
  // Vandermonde (the 1/2 from chi^2 = 2 Gamma is absorbed by lambda scaling).
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (long i = 1; i <= n; ++i) d[i - 1] = std::sqrt(gamma_inverse_cdf(n + alpha - i + 1, rng.uniform()));
  for (long i = 1; i <= n - 1; ++i) e[i - 1] = std::sqrt(gamma_inverse_cdf((double)(n - i), rng.uniform()));
  std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
  for (long i = 0; i < n; ++i) {
    diag[i] = d[i] * d[i];
    if (i > 0) diag[i] += e[i - 1] * e[i - 1];
    if (i + 1 < n) off[i] = d[i] * e[i];
  }
  return tridiag_eigenvalues(diag, off);
}

}  // namespace

std::vector<double> sample_lue_eigenvalues(long n, double alpha, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample_lue_eigenvalues: n must be >= 1");
  if (!(alpha > -1.0)) throw ValidationError("sample_lue_eigenvalues: alpha must be > -1");
  SplitMix64 rng(seed);
  return draw_eigenvalues(n, alpha, rng);
}

LueSampleStats sample_lue_stats(long n, double alpha, long count, std::uint64_t seed,
                                const std::vector<double>& ts) {
  if (n < 1) throw ValidationError("sample_lue_stats: n must be >= 1");
  if (!(alpha > -1.0)) throw ValidationError("sample_lue_stats: alpha must be > -1");
  if (count < 2) throw ValidationError("sample_lue_stats: count must be >= 2");
  SplitMix64 rng(seed);
  double sum_l = 0, sum_l2 = 0;
  std::vector<double> sum_e(ts.size(), 0.0), sum_e2(ts.size(), 0.0);
  for (long it = 0; it < count; ++it) {
    std::vector<double> eig = draw_eigenvalues(n, alpha, rng);
    double L = 0;
    for (double lam : eig) L += 1.0 / lam;
    sum_l += L;
    sum_l2 += L * L;
    for (size_t j = 0; j < ts.size(); ++j) {
      double v = std::exp(-ts[j] * L);
      sum_e[j] += v;
      sum_e2[j] += v * v;
    }
  }
  LueSampleStats st;
  st.count = count;
  st.t = ts;
  double m = sum_l / count;
  st.mean_inv_trace = m;
  st.se_inv_trace = std::sqrt(std::max(0.0, (sum_l2 / count - m * m) / (count - 1)));
  st.mgf.resize(ts.size());
  st.mgf_se.resize(ts.size());
  for (size_t j = 0; j < ts.size(); ++j) {
    double mj = sum_e[j] / count;
    st.mgf[j] = mj;
    st.mgf_se[j] = std::sqrt(std::max(0.0, (sum_e2[j] / count - mj * mj) / (count - 1)));
  }
  return st;
}

}  // namespace ptau
