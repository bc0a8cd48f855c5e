#pragma once

// Exact rational arithmetic (GMP mpq via gmpxx) plus the conversions the rest
// of the library needs: "p/q" parsing/printing and exact embedding into Real.

#include <gmpxx.h>

#include <string>

#include "ptau/real.hpp"

namespace ptau {

using Rat = mpq_class;

inline Rat rat(long p, long q = 1) {
  if (q == 0) throw ValidationError("rat: zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

// Accepts "p", "p/q", and decimal literals like "2.5" (exact).
inline Rat rat_parse(const std::string& s) {
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
      throw ValidationError("rat_parse: malformed rational '" + s + "'");
    try {
      Rat num(digits, 10);
      Rat den(1);
      for (size_t i = 0; i < frac_len; ++i) den *= 10;
      Rat r = num / den;
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw ValidationError("rat_parse: malformed rational '" + s + "'");
    }
  }
  try {
    Rat r(s, 10);
    if (r.get_den() == 0)
      throw ValidationError("rat_parse: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ValidationError("rat_parse: malformed rational '" + s + "'");
  }
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Real to_real(const Rat& r) {
  Real x;
  mpfr_set_q(x.raw(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw ValidationError("rat_pow: 0 to negative power");
    return 1 / rat_pow(base, -e);
  }
  Rat acc(1), b = base;
  long k = e;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

inline Rat rat_factorial(long n) {
  if (n < 0) throw ValidationError("rat_factorial: negative argument");
  Rat acc(1);
  for (long k = 2; k <= n; ++k) acc *= k;
  return acc;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace ptau
