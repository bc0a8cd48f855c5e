#include "ptau/painleve.hpp"

#include "ptau/detkit.hpp"

namespace ptau {

ComplexJet2 sigmahat_jet(const BesselCombination& c, const Real& v, long n, const Real& t,
                         const PrecisionContext& ctx) {
  DetResult<Complex> d = toeplitz_l_det(c, v, n, t, 3, ctx);
  PrecisionGuard g(d.bits_used);
  const Complex& l1 = d.dlog[0];
  const Complex& l2 = d.dlog[1];
  const Complex& l3 = d.dlog[2];
  Complex tc(t);
  ComplexJet2 j;
  j.t = t;
  j.f = Complex(t / 4 - v * v / 2) - tc * l1;
  j.f1 = Complex(Real(1L) / 4) - l1 - tc * l2;
  j.f2 = -(l2 * Complex(2L)) - tc * l3;
  return j;
}

BoundaryReport boundary_constant(long n, const Real& v, const Real& t,
                                 const PrecisionContext& ctx) {
  if (n < 1) throw ValidationError("boundary_constant: n must be >= 1");
  if (!(t > Real(0L))) throw ValidationError("boundary_constant: t must be > 0");
  BesselCombination c(Real(0L), Real(1L));
  DetResult<Complex> d = toeplitz_l_det(c, v, n, t, 1, ctx);
  BoundaryReport r;
  {
    PrecisionGuard g(d.bits_used);
    // The determinant is the real Toeplitz form up to a constant phase, so
    // its log-derivative must be real.
    Real l1 = assert_real_part(d.dlog[0], 1e-20, "boundary_constant: log-derivative");
    Real sigma_hat = t / 4 - v * v / 2 - t * l1;
    r.constant_estimate = sigma_hat - t / 4 - Real(n) / 2 * sqrt(t);
    r.reference = Real(n * n) / 4 - v * v / 2;
  }
  r.bits_used = d.bits_used;
  return r;
}

}  // namespace ptau
