#pragma once

// The discrete side of the lattice: the (p_n, q_n) recurrence seeded from a
// Bessel combination, the three-point relation on the q-orbit, the bilinear
// lattice identity delta^2 log tau_n = tau_{n-1} tau_{n+1} / tau_n^2 on
// Wronskian determinants, and the two O(n)-ish evaluation routes for the
// normalized average that the recurrences provide.

#include "ptau/bessel.hpp"

namespace ptau {

struct RecurrenceState {
  long n = 0;
  Complex p, q;
  Real v, t;
};

// q_0 = sqrt(t) L_{v+1}(2 sqrt t) / L_v(2 sqrt t), p_0 = 0.
RecurrenceState recurrence_seed(const BesselCombination& c, const Real& v, const Real& t);

// (p_n, q_n) -> (p_{n+1}, q_{n+1}):
//   p' = (q^2/t)(p - 1) - v q / t + 1
//   q' = -t/q + (1+n) t / (q (q (p-1) - v) + t)
RecurrenceState recurrence_step(const RecurrenceState& s);

// q_{n-1} recovered from (p_n, q_n):  q_{n-1} = t / (n/p_n - q_n).
Complex recurrence_back(const RecurrenceState& s);

struct RelationReport {
  Complex residual;
  Real scale;     // sum of term magnitudes
  Real relative;  // |residual| / scale
};

// (1+n)/(q_n q_{n+1} + t) + n/(q_n q_{n-1} + t) - [ 1/q_n - q_n/t + (n-v)/t ]
RelationReport alt_recurrence_residual(const Complex& q_prev, const Complex& q_cur,
                                       const Complex& q_next, long n, const Real& v,
                                       const Real& t);

// The same relation evaluated along the orbit seeded from c.
RelationReport alt_recurrence_check(const BesselCombination& c, const Real& v, long n,
                                    const Real& t);

// q_{n+1} + t/q_n - (1+n)/p_{n+1} along the orbit seeded from c.
RelationReport pq_coupling_check(const BesselCombination& c, const Real& v, long n,
                                 const Real& t);

struct TodaReport {
  Complex lhs;  // delta^2 log tau_n  (delta = t d/dt)
  Complex rhs;  // tau_{n-1} tau_{n+1} / tau_n^2
  Real relative;
  long bits_used = 0;
};

// Verify the lattice identity on tau_n = det[delta^{j+k}(t^kappa L_v(sqrt t))];
// the power-of-t gauge reweighting kappa must drop out of both sides.
TodaReport toda_verify(const BesselCombination& c, const Real& v, long n, const Real& t,
                       const Real& gauge_kappa, const PrecisionContext& ctx);

// Normalized average via the lattice recursion on log-jet series (real path).
Certified mgf_toda(long n, const Real& alpha, const Real& t, const PrecisionContext& ctx);

// Normalized average via the scalar (p, q) recurrence: O(n) per evaluation.
Certified mgf_dpii(long n, const Real& alpha, const Real& t, const PrecisionContext& ctx);

}  // namespace ptau
