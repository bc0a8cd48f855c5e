// Discrete lattice checks: the (p, q) orbit, its three-point relation, the
// bilinear Toda identity on Wronskian tau functions, and the two recurrence
// routes for the normalized average against the Hankel determinant.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "ptau/bessel.hpp"
#include "ptau/detkit.hpp"
#include "ptau/discrete.hpp"
#include "ptau/rational.hpp"
#include "ptau/real.hpp"

using namespace ptau;

namespace {
const PrecisionContext kCtx(320, 1e-40, 8192);
}

TEST_CASE("seed state matches the Bessel ratio definition") {
  PrecisionGuard g(320);
  BesselCombination c(Real(1L), Real(1L));
  Real v = to_real(rat_parse("1/2"));
  Real t(2L);
  RecurrenceState s = recurrence_seed(c, v, t);
  CHECK(s.n == 0);
  CHECK(s.p.is_zero());
  Real u = Real(2L) * sqrt(t);
  Complex expected = Complex(sqrt(t)) * combo_l(c, v + Real(1L), u) / combo_l(c, v, u);
  CHECK(rel_diff(s.q, expected).to_double() <= 1e-80);
}

TEST_CASE("one step forward then the backward closure returns q_n") {
  PrecisionGuard g(320);
  BesselCombination c(Real(2L), Real(-3L));
  Real v(1L);
  Real t = to_real(rat_parse("3/2"));
  RecurrenceState s0 = recurrence_seed(c, v, t);
  RecurrenceState s1 = recurrence_step(s0);
  CHECK(s1.n == 1);
  Complex back = recurrence_back(s1);
  CHECK(rel_diff(back, s0.q).to_double() <= 1e-80);
  RecurrenceState s2 = recurrence_step(s1);
  CHECK(s2.n == 2);
  CHECK(rel_diff(recurrence_back(s2), s1.q).to_double() <= 1e-75);
}

TEST_CASE("three-point relation along mixed orbits") {
  PrecisionGuard g(320);
  struct Case {
    double a, b, v, t;
  };
  for (const Case& cs : {Case{1, 0, 0.5, 1}, Case{0, 1, 1.0, 2}, Case{2, -3, 1.5, 0.5}}) {
    BesselCombination c(Real::parse(std::to_string(cs.a)), Real::parse(std::to_string(cs.b)));
    Real v = Real::parse(std::to_string(cs.v));
    Real t = Real::parse(std::to_string(cs.t));
    for (long n = 1; n <= 4; ++n) {
      RelationReport ar = alt_recurrence_check(c, v, n, t);
      CHECK(ar.relative.to_double() <= 1e-80);
      RelationReport pr = pq_coupling_check(c, v, n, t);
      CHECK(pr.relative.to_double() <= 1e-80);
    }
  }
}

TEST_CASE("three-point relation from explicitly supplied neighbours") {
  PrecisionGuard g(320);
  BesselCombination c(Real(1L), Real(1L));
  Real v = to_real(rat_parse("1/2"));
  Real t(1L);
  RecurrenceState s0 = recurrence_seed(c, v, t);
  RecurrenceState s1 = recurrence_step(s0);
  RecurrenceState s2 = recurrence_step(s1);
  RelationReport rr = alt_recurrence_residual(s0.q, s1.q, s2.q, 1, v, t);
  CHECK(rr.relative.to_double() <= 1e-80);
  CHECK(rr.scale.to_double() > 0.0);
}

TEST_CASE("bilinear lattice identity on wronskian tau functions") {
  BesselCombination mixed(Real(1L), Real(1L));
  Real v = to_real(rat_parse("1/2"));
  Real t(1L);
  for (long n : {1L, 2L, 3L}) {
    TodaReport tr = toda_verify(mixed, v, n, t, Real(0L), kCtx);
    CHECK(tr.relative.to_double() <= 1e-60);
    CHECK(tr.bits_used >= 320);
  }
}

TEST_CASE("lattice identity is insensitive to the power-of-t gauge") {
  BesselCombination c(Real(1L), Real(1L));
  Real v = to_real(rat_parse("1/2"));
  Real t(1L);
  Real kappa = to_real(rat_parse("1/3"));
  TodaReport plain = toda_verify(c, v, 2, t, Real(0L), kCtx);
  TodaReport gauged = toda_verify(c, v, 2, t, kappa, kCtx);
  CHECK(gauged.relative.to_double() <= 1e-60);
  PrecisionGuard g(320);
  CHECK(rel_diff(gauged.rhs, plain.rhs).to_double() <= 1e-50);
}

TEST_CASE("lattice identity on the pure-second-kind ray") {
  BesselCombination pure_k(Real(0L), Real(1L));
  Real v(1L);
  Real t(2L);
  TodaReport tr = toda_verify(pure_k, v, 1, t, Real(0L), kCtx);
  CHECK(tr.relative.to_double() <= 1e-60);
}

TEST_CASE("lattice route reproduces the determinant average") {
  Real alpha = to_real(rat_parse("1/2"));
  Real t(2L);
  Certified lattice = mgf_toda(3, alpha, t, kCtx);
  Certified det = mgf(3, alpha, t, "hankel", kCtx);
  PrecisionGuard g(320);
  CHECK(rel_diff(lattice.value, det.value).to_double() <= 1e-35);

  Certified lat0 = mgf_toda(2, Real(0L), Real(1L), kCtx);
  Certified det0 = mgf(2, Real(0L), Real(1L), "hankel", kCtx);
  CHECK(rel_diff(lat0.value, det0.value).to_double() <= 1e-35);
}

TEST_CASE("scalar recurrence route reproduces the determinant average") {
  Real alpha = to_real(rat_parse("3/2"));
  Real t = to_real(rat_parse("1/2"));
  Certified rec = mgf_dpii(4, alpha, t, kCtx);
  Certified det = mgf(4, alpha, t, "hankel", kCtx);
  PrecisionGuard g(320);
  CHECK(rel_diff(rec.value, det.value).to_double() <= 1e-35);
  CHECK(rec.bits_used >= 320);
  CHECK(rec.tol_achieved.to_double() <= kCtx.tol);
}
