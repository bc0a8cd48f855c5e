#include "ptau/real.hpp"

#include <climits>
#include <cstdlib>
#include <sstream>

namespace ptau {

namespace {
thread_local long g_working_bits = 256;
}

long working_precision() { return g_working_bits; }

void set_working_precision(long bits) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  g_working_bits = bits;
}

std::string Real::str() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  std::string sign;
  if (digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // Trim trailing zeros of the mantissa (keeps round-trip property).
  size_t last = digits.find_last_not_of('0');
  digits.erase(last + 1);
  std::ostringstream out;
  out << sign << digits[0];
  if (digits.size() > 1) out << '.' << digits.substr(1);
  out << 'e' << (e - 1);
  return out.str();
}

Real Real::parse(const std::string& s) {
  Real r;
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw ValidationError("Real::parse: malformed number '" + s + "'");
  return r;
}

#define PTAU_BINOP(OP, FN)                                \
  Real operator OP(const Real& a, const Real& b) {        \
    Real r;                                               \
    FN(r.raw(), a.raw(), b.raw(), MPFR_RNDN);             \
    return r;                                             \
  }
PTAU_BINOP(+, mpfr_add)
PTAU_BINOP(-, mpfr_sub)
PTAU_BINOP(*, mpfr_mul)
PTAU_BINOP(/, mpfr_div)
#undef PTAU_BINOP

Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b) { Real r; mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(const Real& a, long b) { Real r; mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator-(long a, const Real& b) { Real r; mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
Real operator*(const Real& a, long b) { Real r; mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) { Real r; mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator/(long a, const Real& b) { Real r; mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }

#define PTAU_FN1(NAME, FN)          \
  Real NAME(const Real& x) {        \
    Real r;                         \
    FN(r.raw(), x.raw(), MPFR_RNDN); \
    return r;                       \
  }
PTAU_FN1(abs, mpfr_abs)
PTAU_FN1(sqrt, mpfr_sqrt)
PTAU_FN1(exp, mpfr_exp)
PTAU_FN1(expm1, mpfr_expm1)
PTAU_FN1(log, mpfr_log)
PTAU_FN1(log1p, mpfr_log1p)
PTAU_FN1(sin, mpfr_sin)
PTAU_FN1(cos, mpfr_cos)
PTAU_FN1(sinh, mpfr_sinh)
PTAU_FN1(cosh, mpfr_cosh)
#undef PTAU_FN1

Real floor(const Real& x) {
  Real r;
  mpfr_rint(r.raw(), x.raw(), MPFR_RNDD);
  return r;
}

Real round_nearest(const Real& x) {
  Real r;
  mpfr_round(r.raw(), x.raw());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& e) {
  Real r;
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long e) {
  Real r;
  mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
  return r;
}

Real gamma_fn(const Real& x) {
  if (x.is_integer() && (x.is_negative() || x.is_zero()))
    throw ValidationError("gamma_fn: pole at non-positive integer " + x.str());
  Real r;
  mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real lngamma(const Real& x) {
  if (!(x > Real(0))) throw ValidationError("lngamma: requires x > 0");
  Real r;
  mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real const_pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real ldexp2(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real rel_diff(const Real& a, const Real& b) {
  if (a.is_nan() || b.is_nan()) {
    Real inf;
    mpfr_set_inf(inf.raw(), 1);
    return inf;
  }
  Real d = abs(a - b);
  Real m = abs(a);
  Real mb = abs(b);
  if (mb > m) m = mb;
  if (m.is_zero()) return Real(0);
  return d / m;
}

Real dist_to_integer(const Real& x) { return abs(x - round_nearest(x)); }

}  // namespace ptau
