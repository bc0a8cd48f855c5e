#pragma once

// Independent reference values: brute-force quadrature moments and
// determinants (no Bessel closed forms anywhere on this path), the exact
// Gamma-matrix trace formula for the third cumulant, and a direct Monte Carlo
// sampler for the ensemble itself.

#include <cstdint>
#include <vector>

#include "ptau/quadrature.hpp"

namespace ptau {

// int_0^inf x^{m+alpha} e^{-x - t/x} dx  (t = 0 requires m + alpha > -1).
Real moment_quadrature(long m, const Real& alpha, const Real& t, const PrecisionContext& ctx);

// Normalized average from quadrature moments alone; guarded to n <= 8.
Certified mgf_quadrature(long n, const Real& alpha, const Real& t, const PrecisionContext& ctx);

// Third cumulant of L = sum_i 1/lambda_i from the exact Gamma-function moment
// matrix at t = 0 via the trace formula for (log det)'''; needs alpha > 2.
Real kappa3_reference(long n, const Real& alpha, const PrecisionContext& ctx);

// --- Monte Carlo ------------------------------------------------------------

// One draw of the n eigenvalues (density prop. to prod lambda^alpha e^-lambda
// times the squared Vandermonde), via the bidiagonal matrix model reduced to
// a symmetric tridiagonal eigenproblem.  Deterministic in (n, alpha, seed).
std::vector<double> sample_lue_eigenvalues(long n, double alpha, std::uint64_t seed);

struct LueSampleStats {
  long count = 0;
  double mean_inv_trace = 0;  // mean of L = sum_i 1/lambda_i
  double se_inv_trace = 0;
  std::vector<double> t;      // exponents requested
  std::vector<double> mgf;    // sample mean of e^{-t L}
  std::vector<double> mgf_se;
};

LueSampleStats sample_lue_stats(long n, double alpha, long count, std::uint64_t seed,
                                const std::vector<double>& ts);

}  // namespace ptau
