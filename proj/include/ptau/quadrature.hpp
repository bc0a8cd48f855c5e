#pragma once

// Double-exponential (trapezoid-in-transformed-variable) quadrature.
//
// Half line: x = exp(u - e^{-u}).  The map gives double-exponential decay of
// the transformed integrand at both ends for integrands with exponential
// decay at infinity and at worst an algebraic singularity x^g, g > -1, at 0.
//
// Unit interval: tanh-sinh in logistic form, x = 1/(1+e^{-2y}),
// 1-x = 1/(1+e^{2y}), y = (pi/2) sinh u, so endpoint factors like (1-x)^b are
// computed without cancellation; the integrand receives both x and 1-x.
//
// Levels halve the step and reuse previous points; convergence is declared
// when consecutive levels agree to the requested relative tolerance, with
// automatic working-precision escalation up to ctx.max_bits.

#include <functional>

#include "ptau/real.hpp"

namespace ptau {

struct QuadResult {
  Real value;
  Real abs_err;   // conservative estimate: last inter-level difference
  int levels = 0;
  long points = 0;
  long bits_used = 0;
};

QuadResult integrate_zero_to_infinity(const std::function<Real(const Real&)>& f,
                                      const PrecisionContext& ctx);

QuadResult integrate_unit_interval(const std::function<Real(const Real&, const Real&)>& f,
                                   const PrecisionContext& ctx);

// Normalization constant of the unitary-ensemble average with weight
// x^alpha e^{-x}: C_n = prod_{j=1..n} j! Gamma(j+alpha).
Real lue_normalization(long n, const Real& alpha);

}  // namespace ptau
