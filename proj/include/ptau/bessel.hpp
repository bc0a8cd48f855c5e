#pragma once

// Modified Bessel functions I_v, K_v at arbitrary precision for real order
// and positive argument, linear combinations L_v = a I_v + b e^{v pi i} K_v
// closed under the raising ladder L_v' = L_{v+1} + (v/x) L_v, and two pieces
// of exact derivative algebra built on that ladder:
//
//  * DeltaExpansion: delta^m (t^kappa F_0), delta = t d/dt, u = sqrt(t), as a
//    table of polynomial coefficients c_{m,k}(u) against the family members
//    F_k, valid for any family satisfying delta F_k = ((v+k)/2) F_k + (u/2) F_{k+1}.
//
//  * LadderExpr: finite sums  sum c u^m F_k  with exact d/dt, giving analytic
//    entry jets for the determinant trace formulas.

#include <map>
#include <vector>

#include "ptau/complex.hpp"
#include "ptau/poly.hpp"
#include "ptau/series.hpp"

namespace ptau {

// Ascending series; negative integer orders by symmetry I_{-m} = I_m.
Real bessel_i(const Real& v, const Real& x);

// K_v = K_{-v}.  Non-integer order by the reflection formula
// K_v = (pi/2)(I_{-v} - I_v)/sin(pi v) with cancellation-aware guard bits;
// integer order by averaging the reflection at v +- eps (the error is even in
// eps); large argument by the divergent asymptotic expansion whenever its
// optimal-truncation error ~e^{-2x} beats the working precision.
Real bessel_k(const Real& v, const Real& x);

struct BesselCombination {
  Real a, b;
  BesselCombination(Real a_, Real b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.is_zero() && b.is_zero())
      throw ValidationError("BesselCombination: (a, b) must not be (0, 0)");
  }
  bool pure_i() const { return b.is_zero(); }
  bool pure_k() const { return a.is_zero(); }
};

// L_v(x) = a I_v(x) + b e^{v pi i} K_v(x)
Complex combo_l(const BesselCombination& c, const Real& v, const Real& x);

// d/dx L_v(x) = L_{v+1}(x) + (v/x) L_v(x)
Complex combo_l_derivative(const BesselCombination& c, const Real& v, const Real& x);

// --- cached ladder families ---------------------------------------------------
//
// A family maps integer shift k to the member function value at a fixed
// argument; all determinant machinery is templated over the family so real
// pure-K / pure-I paths stay real.

class ComboFamily {
 public:
  ComboFamily(BesselCombination c, Real v, Real x)
      : c_(std::move(c)), v_(std::move(v)), x_(std::move(x)) {}
  using value_type = Complex;
  const Complex& at(int k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(k, combo_l(c_, v_ + (long)k, x_)).first->second;
  }

 private:
  BesselCombination c_;
  Real v_, x_;
  mutable std::map<int, Complex> cache_;
};

// f_k = sign^k * K_{v+k}(x) (sign = -1 gives the real-valued family obeying
// the same ladder as L with a = 0: the phases fold into the alternating sign).
class KFamily {
 public:
  KFamily(Real v, Real x, int sign = 1) : v_(std::move(v)), x_(std::move(x)), sign_(sign) {}
  using value_type = Real;
  const Real& at(int k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    Real val = bessel_k(v_ + (long)k, x_);
    if (sign_ < 0 && (k % 2 != 0)) val = -val;
    return cache_.emplace(k, std::move(val)).first->second;
  }

 private:
  Real v_, x_;
  int sign_;
  mutable std::map<int, Real> cache_;
};

class IFamily {
 public:
  IFamily(Real v, Real x) : v_(std::move(v)), x_(std::move(x)) {}
  using value_type = Real;
  const Real& at(int k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(k, bessel_i(v_ + (long)k, x_)).first->second;
  }

 private:
  Real v_, x_;
  mutable std::map<int, Real> cache_;
};

// --- delta-expansion ----------------------------------------------------------

// Coefficient table for delta^m (t^kappa F_0(u)), u = sqrt(t), delta = t d/dt:
//   delta^m (t^kappa F_0) = t^kappa * sum_{k=0}^{m} c_{m,k}(u) F_k(u).
// Recursion (delta = (u/2) d/du on the u-dependence):
//   c_{m+1,k} = (u/2) c_{m,k}' + (kappa + (v+k)/2) c_{m,k} + (u/2) c_{m,k-1}.
template <typename F>
struct DeltaExpansion {
  int m;
  F v, kappa;
  std::vector<std::vector<Poly<F>>> table;  // table[j][k], 0 <= k <= j <= m
};

template <typename F>
DeltaExpansion<F> delta_expansion(int m, const F& v, const F& kappa = F(0L)) {
  if (m < 0) throw ValidationError("delta_expansion: order must be >= 0");
  DeltaExpansion<F> d{m, v, kappa, {}};
  d.table.resize(m + 1);
  d.table[0] = {Poly<F>(F(1L))};
  F half = F(1L) / F(2L);
  Poly<F> u_half = Poly<F>::monomial(half, 1);
  for (int j = 0; j < m; ++j) {
    d.table[j + 1].assign(j + 2, Poly<F>());
    for (int k = 0; k <= j; ++k) {
      const Poly<F>& c = d.table[j][k];
      F lin = kappa + (v + F((long)k)) * half;
      d.table[j + 1][k] = d.table[j + 1][k] + u_half * derivative(c) + c * lin;
      d.table[j + 1][k + 1] = d.table[j + 1][k + 1] + u_half * c;
    }
  }
  return d;
}

inline Real poly_eval_in(const Poly<Rat>& p, const Real& u) { return poly_eval_real(p, u); }
inline Real poly_eval_in(const Poly<Real>& p, const Real& u) { return p.eval(u); }

// Evaluate row m of the table against a family: sum_k c_{m,k}(u) fam.at(k)
// (the t^kappa prefactor is NOT included).
template <typename F, typename Fam>
typename Fam::value_type delta_eval(const DeltaExpansion<F>& d, int m, const Real& u,
                                    const Fam& fam) {
  using V = typename Fam::value_type;
  V acc(0L);
  for (int k = 0; k <= m; ++k) {
    if (d.table[m][k].is_zero()) continue;
    acc = acc + fam.at(k) * poly_eval_in(d.table[m][k], u);
  }
  return acc;
}

// --- exact d/dt algebra over the ladder ---------------------------------------

// sum of coeff * u^m * F_k terms; d/dt = (1/(2u)) d/du with the ladder rule
// maps (m, k, c) to (m-2, k, c (m+v+k)/2) + (m-1, k+1, c/2).
struct LadderExpr {
  std::map<std::pair<int, int>, Real> terms;  // (u-power, family shift) -> coeff

  void add(int upow, int shift, const Real& coeff) {
    auto key = std::make_pair(upow, shift);
    auto it = terms.find(key);
    if (it == terms.end())
      terms.emplace(key, coeff);
    else {
      it->second += coeff;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  static LadderExpr entry(int shift) {
    LadderExpr e;
    e.add(0, shift, Real(1));
    return e;
  }
};

inline LadderExpr ladder_ddt(const LadderExpr& e, const Real& v) {
  LadderExpr r;
  for (const auto& [key, c] : e.terms) {
    auto [m, k] = key;
    r.add(m - 2, k, c * (v + (long)k + (long)m) / 2);
    r.add(m - 1, k + 1, c / 2);
  }
  return r;
}

template <typename Fam>
typename Fam::value_type ladder_eval(const LadderExpr& e, const Real& u, const Fam& fam) {
  using V = typename Fam::value_type;
  V acc(0L);
  for (const auto& [key, c] : e.terms) {
    auto [m, k] = key;
    acc = acc + fam.at(k) * (c * pow(u, (long)m));
  }
  return acc;
}

}  // namespace ptau
