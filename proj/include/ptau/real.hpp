#pragma once

// Arbitrary-precision real scalar backed by MPFR.
//
// Every freshly created value is allocated at the thread-local *working
// precision*; arithmetic rounds once, into the freshly allocated result.
// Scoped precision changes are done with PrecisionGuard so escalation loops
// (compute, then recompute at doubled precision to certify) stay exception
// safe.

#include <mpfr.h>

#include <climits>
#include <stdexcept>
#include <string>

namespace ptau {

long working_precision();
void set_working_precision(long bits);

class PrecisionGuard {
 public:
  explicit PrecisionGuard(long bits) : saved_(working_precision()) {
    set_working_precision(bits);
  }
  ~PrecisionGuard() { set_working_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  long saved_;
};

class Real {
 public:
  Real() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Real(double d) { mpfr_init2(v_, working_precision()); mpfr_set_d(v_, d, MPFR_RNDN); }
  Real(long i) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, i, MPFR_RNDN); }
  Real(int i) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, i, MPFR_RNDN); }
  ~Real() { mpfr_clear(v_); }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  long precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Base-2 exponent of the leading bit (value ~ 2^exponent).
  long exponent() const { return mpfr_zero_p(v_) ? LONG_MIN : mpfr_get_exp(v_); }

  // Shortest round-trip decimal representation, e.g. "-1.2345e-7".
  std::string str() const;
  // Parse at the current working precision.
  static Real parse(const std::string& s);

  friend void swap(Real& a, Real& b) { mpfr_swap(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

// --- arithmetic (results allocated at the working precision) ---------------

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator+(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(const Real& a, long b);
Real operator-(long a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator/(long a, const Real& b);

inline Real& operator+=(Real& a, const Real& b) { a = a + b; return a; }
inline Real& operator-=(Real& a, const Real& b) { a = a - b; return a; }
inline Real& operator*=(Real& a, const Real& b) { a = a * b; return a; }
inline Real& operator/=(Real& a, const Real& b) { a = a / b; return a; }

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()); }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()); }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()); }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()); }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

// --- functions --------------------------------------------------------------

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real pow(const Real& base, const Real& e);
Real pow(const Real& base, long e);
Real gamma_fn(const Real& x);   // Gamma(x); poles rejected with ValidationError
Real lngamma(const Real& x);    // log |Gamma(x)| for x > 0
Real floor(const Real& x);
Real round_nearest(const Real& x);
Real const_pi();
Real ldexp2(const Real& x, long e);  // x * 2^e, exact

// Copy x into a fresh value at the current working precision (one rounding).
inline Real round_to_working(const Real& x) {
  Real r;
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

// |a-b| / max(|a|,|b|); 0 if both zero.  NaN inputs give +inf.
Real rel_diff(const Real& a, const Real& b);

// Nearest integer distance, used for integer-order detection.
Real dist_to_integer(const Real& x);

// --- error taxonomy (CLI maps these to exit codes) --------------------------

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsensusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- precision context & certification -------------------------------------

struct PrecisionContext {
  long bits = 256;      // starting working precision
  double tol = 1e-30;   // target relative agreement for certification
  long max_bits = 4096; // escalation ceiling
  PrecisionContext() = default;
  PrecisionContext(long b, double t, long m = 4096) : bits(b), tol(t), max_bits(m) {
    if (b < 64) throw ValidationError("PrecisionContext: bits must be >= 64");
    if (m < b) throw ValidationError("PrecisionContext: max_bits must be >= bits");
    if (!(t > 0)) throw ValidationError("PrecisionContext: tol must be positive");
  }
};

struct Certified {
  Real value;
  long bits_used = 0;
  Real tol_achieved;  // relative agreement between the last two precisions
};

// Evaluate f at ctx.bits and 2*ctx.bits; accept when the two agree to ctx.tol,
// else escalate (doubling) up to ctx.max_bits.  f is called under a
// PrecisionGuard for the requested bits.
template <typename F>
Certified certify(const PrecisionContext& ctx, F&& f) {
  long b = ctx.bits;
  Real prev;
  {
    PrecisionGuard g(b);
    prev = f();
  }
  while (2 * b <= ctx.max_bits) {
    b *= 2;
    Real cur;
    {
      PrecisionGuard g(b);
      cur = f();
    }
    Real d = rel_diff(prev, cur);
    {
      PrecisionGuard g(b);
      if (d <= Real(ctx.tol)) return Certified{cur, b, d};
    }
    prev = cur;
  }
  throw CertificationError("certify: no agreement to tol within max_bits");
}

}  // namespace ptau
