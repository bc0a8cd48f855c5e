// Unit tests for the modified Bessel kernel: I/K evaluation anchors, the
// three-term ladder, the mixed combination with its complex phase, and the
// delta-operator coefficient tables used by the determinant identities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ptau/bessel.hpp"
#include "ptau/complex.hpp"
#include "ptau/real.hpp"

using namespace ptau;

namespace {
bool rel_ok(const Real& got, const Real& want, double tol) {
  return rel_diff(got, want).to_double() <= tol;
}
bool crel_ok(const Complex& got, const Complex& want, double tol) {
  return rel_diff(got, want).to_double() <= tol;
}
Real half_integer_k(long twice_v, const Real& x) {
  // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}; K_{3/2}(x) = sqrt(pi/(2x)) e^{-x} (1 + 1/x)
  Real pref = sqrt(const_pi() / (Real(2L) * x)) * exp(-x);
  if (twice_v == 1) return pref;
  if (twice_v == 3) return pref * (Real(1L) + Real(1L) / x);
  throw std::logic_error("unsupported order");
}
}  // namespace

TEST_CASE("bessel K: half-integer closed forms") {
  PrecisionGuard g(320);
  Real v12 = Real(1L) / Real(2L);
  Real v32 = Real(3L) / Real(2L);
  for (long num : {1L, 2L, 5L}) {
    Real x = Real(num) / Real(2L) + Real(1L) / Real(2L);  // 1, 3/2, 3
    CHECK(rel_ok(bessel_k(v12, x), half_integer_k(1, x), 1e-85));
    CHECK(rel_ok(bessel_k(v32, x), half_integer_k(3, x), 1e-85));
  }
  // K_{1/2}(2) = sqrt(pi/4) e^{-2}
  CHECK(rel_ok(bessel_k(v12, Real(2L)), sqrt(const_pi() / Real(4L)) * exp(Real(-2L)), 1e-85));
}

TEST_CASE("bessel I: half-integer closed form") {
  PrecisionGuard g(320);
  Real v12 = Real(1L) / Real(2L);
  Real x = Real(3L) / Real(2L);
  // I_{1/2}(x) = sqrt(2/(pi x)) sinh(x)
  Real sinhx = (exp(x) - exp(-x)) / Real(2L);
  CHECK(rel_ok(bessel_i(v12, x), sqrt(Real(2L) / (const_pi() * x)) * sinhx, 1e-85));
}

TEST_CASE("bessel: Wronskian identity I_v K_{v+1} + I_{v+1} K_v = 1/x") {
  PrecisionGuard g(320);
  for (const char* vs : {"0", "1/3", "5/2"}) {
    Real v = to_real(rat_parse(vs));
    for (const char* xs : {"1/2", "1", "7"}) {
      Real x = to_real(rat_parse(xs));
      Real w = bessel_i(v, x) * bessel_k(v + 1L, x) + bessel_i(v + 1L, x) * bessel_k(v, x);
      CHECK(rel_ok(w, Real(1L) / x, 1e-85));
    }
  }
}

TEST_CASE("bessel: three-term ladders") {
  PrecisionGuard g(320);
  Real v = to_real(rat_parse("4/3"));
  Real x = to_real(rat_parse("5/2"));
  // K_{v+1} - K_{v-1} = (2v/x) K_v ; I_{v-1} - I_{v+1} = (2v/x) I_v
  CHECK(rel_ok(bessel_k(v + 1L, x) - bessel_k(v - 1L, x),
               Real(2L) * v / x * bessel_k(v, x), 1e-82));
  CHECK(rel_ok(bessel_i(v - 1L, x) - bessel_i(v + 1L, x),
               Real(2L) * v / x * bessel_i(v, x), 1e-82));
}

TEST_CASE("bessel: domain validation") {
  CHECK_THROWS_AS(bessel_k(Real(1L), Real(0L)), ValidationError);
  CHECK_THROWS_AS(bessel_i(Real(1L), Real(-2L)), ValidationError);
}

TEST_CASE("combination: endpoint conventions") {
  PrecisionGuard g(320);
  Real v = to_real(rat_parse("1/2"));
  Real x = Real(2L);
  BesselCombination pure_i{Real(1L), Real(0L)};
  BesselCombination pure_k{Real(0L), Real(1L)};
  Complex zi = combo_l(pure_i, v, x);
  CHECK(rel_ok(zi.re, bessel_i(v, x), 1e-82));
  CHECK(zi.im.to_double() <= 1e-60);
  // the K side carries the phase e^{i pi v}: at v = 1/2 it is purely imaginary,
  // at v = 1 it is -K_1
  Complex zk = combo_l(pure_k, v, x);
  CHECK(abs(zk.re).to_double() <= 1e-60);
  CHECK(rel_ok(zk.im, bessel_k(v, x), 1e-82));
  Complex zk1 = combo_l(pure_k, Real(1L), x);
  CHECK(rel_ok(zk1.re, -bessel_k(Real(1L), x), 1e-82));
  CHECK(zk1.im.is_zero());
  CHECK_THROWS_AS(combo_l(BesselCombination{Real(0L), Real(0L)}, v, x), ValidationError);
}

TEST_CASE("combination: both members obey the same three-term ladder") {
  PrecisionGuard g(320);
  BesselCombination c{Real(2L), Real(-3L)};
  for (const char* vs : {"1/3", "3/2"}) {
    Real v = to_real(rat_parse(vs));
    Real x = to_real(rat_parse("7/4"));
    Complex lhs = combo_l(c, v - 1L, x) - combo_l(c, v + 1L, x);
    Complex rhs = combo_l(c, v, x) * (Real(2L) * v / x);
    CHECK(crel_ok(lhs, rhs, 1e-80));
  }
}

TEST_CASE("combination: derivative matches the ladder form") {
  PrecisionGuard g(320);
  BesselCombination c{Real(1L), Real(1L)};
  Real v = to_real(rat_parse("1/3"));
  Real x = to_real(rat_parse("3/2"));
  // L_v'(x) = L_{v+1}(x) + (v/x) L_v(x)
  Complex want = combo_l(c, v + 1L, x) + combo_l(c, v, x) * (v / x);
  CHECK(crel_ok(combo_l_derivative(c, v, x), want, 1e-80));
}

TEST_CASE("family caches agree with direct evaluation") {
  PrecisionGuard g(320);
  Real v = to_real(rat_parse("1/3"));
  Real x = Real(2L);
  KFamily plain(v, x);
  KFamily folded(v, x, -1);
  IFamily fi(v, x);
  for (int k = 0; k <= 3; ++k) {
    CHECK(rel_ok(plain.at(k), bessel_k(v + (long)k, x), 1e-82));
    Real want = bessel_k(v + (long)k, x);
    if (k % 2 != 0) want = -want;
    CHECK(rel_ok(folded.at(k), want, 1e-82));
    CHECK(rel_ok(fi.at(k), bessel_i(v + (long)k, x), 1e-82));
  }
}

// The delta tables write (t d/dt)^m (t^kappa F_0(u)), u = sqrt(t), as
// t^kappa sum_k c_{m,k}(u) F_k(u).  The ladder algebra below tracks u-powers
// explicitly and provides an independent route to the same derivatives via
// the Stirling expansion delta^m = sum_j S(m,j) t^j d^j/dt^j.
TEST_CASE("delta tables match the exact d/dt ladder algebra") {
  PrecisionGuard g(320);
  Real v = to_real(rat_parse("1/3"));
  Real u = to_real(rat_parse("3/2"));  // u = sqrt(t)
  Real t = u * u;
  BesselCombination c{Real(1L), Real(1L)};
  ComboFamily fam(c, v, u);

  LadderExpr e0 = LadderExpr::entry(0);
  LadderExpr e1 = ladder_ddt(e0, v);
  LadderExpr e2 = ladder_ddt(e1, v);
  LadderExpr e3 = ladder_ddt(e2, v);
  Complex f1 = ladder_eval(e1, u, fam);
  Complex f2 = ladder_eval(e2, u, fam);
  Complex f3 = ladder_eval(e3, u, fam);
  // delta^1 = t d/dt, delta^2 = t d/dt + t^2 d^2/dt^2,
  // delta^3 = t d/dt + 3 t^2 d^2/dt^2 + t^3 d^3/dt^3  (Stirling numbers)
  Complex d1 = f1 * t;
  Complex d2 = f1 * t + f2 * (t * t);
  Complex d3 = f1 * t + f2 * (Real(3L) * t * t) + f3 * (t * t * t);

  DeltaExpansion<Real> tab = delta_expansion<Real>(3, v, Real(0L));
  CHECK(crel_ok(delta_eval(tab, 1, u, fam), d1, 1e-75));
  CHECK(crel_ok(delta_eval(tab, 2, u, fam), d2, 1e-75));
  CHECK(crel_ok(delta_eval(tab, 3, u, fam), d3, 1e-75));
}

TEST_CASE("delta tables: gauge power obeys the product rule") {
  PrecisionGuard g(320);
  Real v = to_real(rat_parse("1/2"));
  Real u = to_real(rat_parse("5/4"));
  Real kappa = to_real(rat_parse("1/3"));
  KFamily fam(v, u, -1);

  DeltaExpansion<Real> plain = delta_expansion<Real>(2, v, Real(0L));
  DeltaExpansion<Real> gauged = delta_expansion<Real>(2, v, kappa);
  Real g0 = delta_eval(plain, 0, u, fam);
  Real g1 = delta_eval(plain, 1, u, fam);
  Real g2 = delta_eval(plain, 2, u, fam);
  // delta (t^kappa f) = t^kappa (kappa f + delta f), applied twice:
  CHECK(rel_ok(delta_eval(gauged, 1, u, fam), kappa * g0 + g1, 1e-75));
  CHECK(rel_ok(delta_eval(gauged, 2, u, fam),
               kappa * kappa * g0 + Real(2L) * kappa * g1 + g2, 1e-75));
}

TEST_CASE("delta tables: first-order coefficients in closed form") {
  // c_{1,0} = kappa + v/2 and c_{1,1} = u/2 exactly.
  DeltaExpansion<Rat> tab = delta_expansion<Rat>(1, Rat(1, 3), Rat(2, 5));
  CHECK(tab.table[1][0] == Poly<Rat>(Rat(2, 5) + Rat(1, 6)));
  CHECK(tab.table[1][1] == Poly<Rat>::monomial(Rat(1, 2), 1));
  CHECK_THROWS_AS(delta_expansion<Rat>(-1, Rat(0)), ValidationError);
}
