#pragma once

// Determinant representations of the deformed-ensemble averages, with
// analytic entry jets so log-derivatives come from trace formulas instead of
// numerical differencing:
//
//  * hankel_det:        det[ mu_{j+k}(t) ],           mu_j = 2 t^{(j+a+1)/2} K_{j+a+1}(2 sqrt t)
//  * toeplitz_l_det:    det[ L_{j-k+v}(sqrt t) ],     L a Bessel combination
//  * wronskian_det:     det[ delta^{j+k} (t^kappa L_v(sqrt t)) ],  delta = t d/dt
//  * hard_edge_det:     e^{-t/4} t^{-mu a/2} det[ I_{j-k+mu}(sqrt t) ]  (a x a)
//  * jacobi_hankel_det: det[ b_{j+k}(t) ],  b_m = int_0^1 x^{m+a}(1-x)^b e^{-t/x} dx
//  * gap_det:           det[ g_{j+k}(s) ],  g_m = e^{-s} int_0^\infty (s+x)^{m+a} x^mu e^{-x} dx
//
// plus the normalized average  mgf(n, alpha, t)  computed by any of five
// routes (hankel / toeplitz / toda / dpii / quadrature) under
// certification-by-precision-doubling.

#include <string>
#include <vector>

#include "ptau/bessel.hpp"
#include "ptau/linalg.hpp"
#include "ptau/quadrature.hpp"

namespace ptau {

template <typename T>
struct DetResult {
  T value;
  std::vector<T> dlog;  // dlog[k-1] = d^k/dt^k log(value), k = 1..jet_order
  long bits_used = 0;
  Real tol_achieved;
  std::string method;
};

// j may be any integer (entry-derivative shifts reach j = -3).
// t = 0 gives Gamma(j + alpha + 1).
Real moment_mu(long j, const Real& alpha, const Real& t);

DetResult<Real> hankel_det(long n, const Real& alpha, const Real& t, int jet_order,
                           const PrecisionContext& ctx);

DetResult<Complex> toeplitz_l_det(const BesselCombination& c, const Real& v, long n,
                                  const Real& t, int jet_order, const PrecisionContext& ctx);

DetResult<Complex> wronskian_det(const BesselCombination& c, const Real& v, long n,
                                 const Real& t, int jet_order, const Real& gauge_kappa,
                                 const PrecisionContext& ctx);

DetResult<Real> hard_edge_det(long a, const Real& mu, const Real& t, int jet_order,
                              const PrecisionContext& ctx);

DetResult<Real> jacobi_hankel_det(long n, const Real& alpha, const Real& beta, const Real& t,
                                  int jet_order, const PrecisionContext& ctx);

DetResult<Real> gap_det(long n, const Real& alpha, const Real& mu, const Real& s,
                        int jet_order, const PrecisionContext& ctx);

// Normalized average M_n(t); method one of mgf_methods().
Certified mgf(long n, const Real& alpha, const Real& t, const std::string& method,
              const PrecisionContext& ctx);

const std::vector<std::string>& mgf_methods();

}  // namespace ptau
