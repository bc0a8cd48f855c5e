// Exact series machinery: finite-parameter cumulants, the three limit series
// and their ODE residuals, the exact maps between them, and the truncated
// evaluation of the limiting average.  Expected rationals were frozen from
// independent derivations (moment quadrature, closed-form low orders).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "ptau/cumulants.hpp"
#include "ptau/rational.hpp"
#include "ptau/real.hpp"
#include "ptau/series.hpp"

using namespace ptau;

namespace {

Rat rq(const std::string& s) { return rat_parse(s); }

Rat factorial(int k) {
  Rat f(1);
  for (int j = 2; j <= k; ++j) f *= Rat(j);
  return f;
}

void check_series(const Series<Rat>& got, const std::vector<std::string>& expect) {
  REQUIRE(got.order() + 1 >= (int)expect.size());
  for (size_t p = 0; p < expect.size(); ++p) {
    CAPTURE(p);
    CHECK(got.at((int)p) == rq(expect[p]));
  }
}

}  // namespace

TEST_CASE("exact cumulants at small parameters") {
  CumulantSeries cs = cumulants_exact(Rat(2), Rat(3), 3);
  CHECK(cs.kappa[1] == rq("2/3"));
  CHECK(cs.kappa[2] == rq("5/36"));
  CHECK(cs.kappa[3] == rq("7/27"));
  CHECK(cs.a[1] == rq("-2/3"));
  CHECK(cs.a[2] == rq("5/36"));
  CHECK(cs.a[3] == rq("-7/54"));
  for (int p = 1; p <= 3; ++p) {
    Rat sign = (p % 2 == 0) ? Rat(1) : Rat(-1);
    CHECK(cs.kappa[p] == sign * factorial(p - 1) * cs.a[p]);
  }

  std::vector<Rat> m = moments_from_cumulants(cs.kappa);
  CHECK(m[0] == Rat(1));
  CHECK(m[1] == rq("2/3"));
  CHECK(m[2] == rq("7/12"));
  CHECK(m[3] == rq("5/6"));
}

TEST_CASE("first two cumulants follow the closed forms") {
  // kappa_1 = n/alpha and kappa_2 = (n^2 + n alpha) / (alpha^2 (alpha^2 - 1)).
  struct P {
    const char *n, *alpha;
  };
  for (const P& c : {P{"2", "3"}, P{"5", "7/2"}, P{"3", "9/4"}, P{"1", "13/6"}}) {
    Rat n = rq(c.n), alpha = rq(c.alpha);
    CumulantSeries cs = cumulants_exact(n, alpha, 2);
    CHECK(cs.kappa[1] == n / alpha);
    CHECK(cs.kappa[2] == (n * n + n * alpha) / (alpha * alpha * (alpha * alpha - 1)));
  }
}

TEST_CASE("higher cumulants at frozen parameter points") {
  CumulantSeries a = cumulants_exact(Rat(3), rq("7/2"), 5);
  CHECK(a.kappa[4] == rq("2603264/1980825"));
  CHECK(a.kappa[5] == rq("-287793152/24958395"));

  CumulantSeries b = cumulants_exact(Rat(2), rq("15/2"), 3);
  CHECK(b.kappa[1] == rq("4/15"));
  CHECK(b.kappa[2] == rq("304/49725"));
  CHECK(b.kappa[3] == rq("5888/8204625"));
}

TEST_CASE("integrability flags and strict mode") {
  // Non-integer alpha: the recursion runs past the integrability boundary and
  // the coefficients beyond it are emitted as formal values with valid=false.
  CumulantSeries cs = cumulants_exact(Rat(3), rq("7/2"), 5);
  CHECK(cs.valid[1]);
  CHECK(cs.valid[2]);
  CHECK(cs.valid[3]);
  CHECK(cs.valid[4]);        // 7/2 > 3
  CHECK_FALSE(cs.valid[5]);  // 7/2 is not > 4
  CHECK(cs.kappa[5] == rq("-287793152/24958395"));  // formal value still emitted
  CHECK_NOTHROW(cumulants_exact(Rat(3), rq("7/2"), 4, true));
  CHECK_THROWS_AS(cumulants_exact(Rat(3), rq("7/2"), 5, true), ValidationError);
  CHECK_NOTHROW(cumulants_exact(Rat(2), Rat(3), 3, true));
  CHECK_THROWS_AS(cumulants_exact(Rat(2), Rat(0), 2), ValidationError);
  // Integer alpha: the coefficient recursion loses its pivot exactly at the
  // first non-integrable order and the failure is reported, not papered over.
  CHECK_THROWS_AS(cumulants_exact(Rat(2), Rat(3), 4), SeriesSolveError);
}

TEST_CASE("finite-parameter series annihilates its defining equation") {
  Series<Rat> y = y_series_exact(Rat(3), rq("7/2"), 6);
  Series<Rat> res = y_ode_residual(y, Rat(3), rq("7/2"));
  for (int m = 0; m <= 5; ++m) {
    CAPTURE(m);
    CHECK(res.at(m) == 0);
  }
}

TEST_CASE("limit series of the rescaled log-derivative") {
  check_series(y_limit_series(rq("1/2"), 7),
               {"0", "-2", "-16/3", "-512/45", "-8192/315", "-2490368/42525",
                "-61865984/467775", "-38117834752/127702575"});
  check_series(y_limit_series(rq("7/2"), 7),
               {"0", "-2/7", "16/2205", "-512/509355", "352256/695269575",
                "10354688/43801983225", "23883415552/860051940622875",
                "2583959699456/1715803621542635625"});
  check_series(y_limit_series(rq("9/2"), 4),
               {"0", "-2/9", "16/6237", "-512/3648645", "8192/505702197"});

  Series<Rat> Y = y_limit_series(rq("1/2"), 8);
  Series<Rat> res = y_limit_ode_residual(Y, rq("1/2"));
  for (int m = 0; m <= 7; ++m) {
    CAPTURE(m);
    CHECK(res.at(m) == 0);
  }
}

TEST_CASE("limit series recovered from the symbolic finite-parameter solution") {
  for (const char* alpha : {"7/2", "9/2"}) {
    Series<Rat> direct = y_limit_series(rq(alpha), 4);
    Series<Rat> via_x = y_limit_from_symbolic(rq(alpha), 4);
    for (int p = 0; p <= 4; ++p) {
      CAPTURE(alpha);
      CAPTURE(p);
      CHECK(direct.at(p) == via_x.at(p));
    }
  }
}

TEST_CASE("diagonal limit flow: frozen coefficients and all three equations") {
  check_series(f_limit_series(8),
               {"0", "1", "2", "12", "106", "1140", "13812", "181272", "2519578"});

  Series<Rat> f = f_limit_series(10);
  Series<Rat> r1 = f_ode_residual(f);
  Series<Rat> r2 = f_quad_residual(f);
  Series<Rat> r3 = f_aux_residual(f);
  for (int m = 0; m <= 8; ++m) {
    CAPTURE(m);
    CHECK(r1.at(m) == 0);
    CHECK(r2.at(m) == 0);
    CHECK(r3.at(m) == 0);
  }
}

TEST_CASE("diagonal limit flow from the symbolic route") {
  Series<Rat> direct = f_limit_series(4);
  Series<Rat> via_x = f_limit_from_symbolic(4);
  for (int p = 0; p <= 4; ++p) {
    CAPTURE(p);
    CHECK(direct.at(p) == via_x.at(p));
  }
}

TEST_CASE("hard-edge scaling series: frozen coefficients and both equations") {
  check_series(r_series(rq("1/2"), 7),
               {"0", "2", "8/3", "128/45", "1024/315", "155648/42525", "1933312/467775",
                "595591168/127702575"});
  check_series(r_series(rq("7/2"), 7),
               {"-6", "2/7", "-8/2205", "128/509355", "-44032/695269575",
                "-647168/43801983225", "-746356736/860051940622875",
                "-40374370304/1715803621542635625"});
  check_series(r_series(rq("3/2"), 7),
               {"-1", "2/3", "-8/45", "-128/945", "-1024/42525", "8192/1403325",
                "950272/212837625", "8388608/9577693125"});

  // leading coefficients in closed form: r_0 = (1/4 - a^2)/2, r_1 = 1/a
  for (const char* alpha : {"1/2", "3/2", "5/2", "7/2"}) {
    Rat a = rq(alpha);
    Series<Rat> r = r_series(a, 1);
    CHECK(r.at(0) == (Rat(1, 4) - a * a) / Rat(2));
    CHECK(r.at(1) == Rat(1) / a);
  }

  Series<Rat> r = r_series(rq("5/2"), 9);
  Series<Rat> res2 = r_ode_residual(r, rq("5/2"));
  Series<Rat> res3 = r_third_order_residual(r);
  for (int m = 0; m <= 7; ++m) {
    CAPTURE(m);
    CHECK(res2.at(m) == 0);
    CHECK(res3.at(m) == 0);
  }
}

TEST_CASE("hard-edge series maps onto the limit series coefficientwise") {
  // r_p 2^p = -2 y_p for p >= 1.
  for (const char* alpha : {"1/2", "7/2"}) {
    Series<Rat> r = r_series(rq(alpha), 7);
    Series<Rat> y = y_limit_series(rq(alpha), 7);
    Rat two_p(1);
    for (int p = 1; p <= 7; ++p) {
      two_p *= Rat(2);
      CAPTURE(alpha);
      CAPTURE(p);
      CHECK(r.at(p) * two_p == Rat(-2) * y.at(p));
    }
  }
}

TEST_CASE("resonant parameters are reported, not guessed through") {
  CHECK_THROWS_AS(y_limit_series(Rat(1), 4), SeriesSolveError);
  CHECK_THROWS_AS(r_series(Rat(1), 4), SeriesSolveError);
  CHECK_THROWS_AS(r_series(Rat(2), 4), SeriesSolveError);
  CHECK_THROWS_AS(r_series(Rat(3), 4), SeriesSolveError);
  try {
    y_limit_series(Rat(1), 4);
    CHECK(false);
  } catch (const SeriesSolveError& e) {
    CHECK(e.kind == SeriesSolveError::Kind::denominator_vanished);
  }
}

TEST_CASE("truncated evaluation of the limiting average") {
  PrecisionContext ctx(320, 1e-30, 8192);
  Certified c = limit_mgf(Rat(2), to_real(rq("1/10")), 12, ctx);
  PrecisionGuard g(320);
  Real frozen = Real::parse("0.95162585267772415570181230296947370538736911074");
  CHECK(rel_diff(c.value, frozen).to_double() <= 1e-18);
  // the reported accuracy is the size of the last retained term
  CHECK(c.tol_achieved.to_double() < 1e-3);
  CHECK(c.tol_achieved.to_double() > 1e-6);
}
