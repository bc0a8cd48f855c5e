#include "ptau/clirun.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptau/bessel.hpp"
#include "ptau/cumulants.hpp"
#include "ptau/detkit.hpp"
#include "ptau/discrete.hpp"
#include "ptau/oracle.hpp"
#include "ptau/painleve.hpp"
#include "ptau/poly.hpp"
#include "ptau/rational.hpp"

namespace ptau {
namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// formatting

std::string fmt_double(double x) {
  std::ostringstream o;
  o << std::setprecision(17) << x;
  return o.str();
}

// Short scientific rendering for diagnostics (full precision is only used for
// result values, where byte-exact reproducibility matters).
std::string fmt_short(const Real& x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.6Re", x.raw());
  std::string r(s);
  mpfr_free_str(s);
  return r;
}

std::string fmt_complex(const Complex& z) {
  std::string re = z.re.str();
  std::string im = z.im.str();
  if (!im.empty() && im[0] != '-') return re + "+" + im + "*I";
  return re + im + "*I";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

// ---------------------------------------------------------------------------
// report accumulator

struct Report {
  ordered_json doc;
  bool any_check_failed = false;

  Report() {
    doc["command"] = "";
    doc["inputs"] = ordered_json::object();
    doc["results"] = ordered_json::array();
    doc["checks"] = ordered_json::array();
    doc["version"] = kVersion;
  }
  void command(const std::string& c) { doc["command"] = c; }
  void input(const std::string& k, const std::string& v) { doc["inputs"][k] = v; }
  void input(const std::string& k, long v) { doc["inputs"][k] = v; }
  void result(const std::string& name, const std::string& value, const std::string& method,
              long bits, const std::string& tol_achieved) {
    doc["results"].push_back(ordered_json{{"name", name},
                                          {"value", value},
                                          {"method", method},
                                          {"bits", bits},
                                          {"tol_achieved", tol_achieved}});
  }
  void check(const std::string& name, bool pass, const std::string& detail) {
    doc["checks"].push_back(ordered_json{{"name", name}, {"pass", pass}, {"detail", detail}});
    if (!pass) any_check_failed = true;
  }
};

// ---------------------------------------------------------------------------
// run configuration

struct Config {
  long bits = 256;
  double tol_raw = 0;  // 0 = not supplied on the command line
  long max_bits = 4096;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;

  std::optional<double> user_tol() const {
    return tol_raw != 0 ? std::optional<double>(tol_raw) : std::nullopt;
  }
  PrecisionContext ctx() const {
    return PrecisionContext(bits, user_tol().value_or(1e-30), max_bits);
  }
  // Check thresholds: a user-supplied --tol can loosen a default gate (so a
  // coarse run can still exit 0) but never silently tightens a gate past what
  // the computation certifies.
  double gate(double dflt) const {
    auto u = user_tol();
    return u && *u > dflt ? *u : dflt;
  }
};

// Numeric inputs are parsed at the precision ceiling so escalation inside
// certified routines never runs out of input accuracy.  Rational syntax
// ("3", "5/36", "2.5") is kept exact; anything else (e.g. "1e6") goes through
// the floating parser.
Real parse_real(const std::string& s, const Config& cfg) {
  PrecisionGuard g(cfg.max_bits);
  try {
    return to_real(rat_parse(s));
  } catch (const ValidationError&) {
    return Real::parse(s);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  if (out.empty()) throw ValidationError("empty value list");
  return out;
}

std::string pass_detail(const Real& got, double gate) {
  return "relative " + fmt_short(got) + " vs gate " + fmt_double(gate);
}

bool below(const Real& x, double gate) { return x <= Real(gate); }

// ---------------------------------------------------------------------------
// jets assembled from determinant log-derivatives
//
// With F(t) = log det(t) and L_k = F^(k), the observable y = t L_1 has
// y' = L_1 + t L_2 and y'' = 2 L_2 + t L_3.

Jet2<Real> t_dlog_jet(const Real& t, const std::vector<Real>& L) {
  return {t, t * L[0], L[0] + t * L[1], Real(2L) * L[1] + t * L[2]};
}

// Contact element of the seed orbit variable q(t) = sqrt(t) L_{v+1}(2 sqrt t)
// / L_v(2 sqrt t), differentiated through the Bessel ladder
// L_v'(u) = L_{v+1}(u) + (v/u) L_v(u).
Jet2<Complex> q_seed_jet(const BesselCombination& c, const Real& v, const Real& t) {
  Real u = Real(2L) * sqrt(t);
  Complex cu(u);
  Complex g0 = combo_l(c, v, u);
  Complex g1 = combo_l(c, v + Real(1L), u);
  Complex g2 = combo_l(c, v + Real(2L), u);
  Complex g3 = combo_l(c, v + Real(3L), u);
  if (g0.is_zero()) throw ValidationError("q seed jet: L_v vanishes at this argument");
  Complex d0 = g1 + Complex(v) / cu * g0;
  Complex d1 = g2 + Complex(v + Real(1L)) / cu * g1;
  Complex d2 = g3 + Complex(v + Real(2L)) / cu * g2;
  Complex dd0 = d1 + Complex(v) / cu * d0 - Complex(v) / (cu * cu) * g0;
  Complex dd1 = d2 + Complex(v + Real(1L)) / cu * d1 - Complex(v + Real(1L)) / (cu * cu) * g1;
  Complex A = g1 / g0;
  Complex A1 = (d1 * g0 - g1 * d0) / (g0 * g0);
  Complex A2 = (dd1 * g0 - g1 * dd0) / (g0 * g0) -
               Complex(2L) * d0 * (d1 * g0 - g1 * d0) / (g0 * g0 * g0);
  // q(t) = (u/2) A(u), du/dt = 2/u.
  Complex q = cu / Complex(2L) * A;
  Complex q1 = A / cu + A1;
  Complex q2 = Complex(2L) * A1 / (cu * cu) - Complex(2L) * A / (cu * cu * cu) +
               Complex(2L) * A2 / cu;
  return {Complex(t), q, q1, q2};
}

// ---------------------------------------------------------------------------
// per-command option storage

struct Opts {
  long n = 0;
  long alpha_int = 0;  // hard-edge determinant dimension
  std::string n_str, alpha, beta, mu, t, t_grid, v, a, b;
  std::string method, suite, kind;
  long order = 8;
  long steps = 6;
};

// ---------------------------------------------------------------------------
// handlers

void handle_mgf(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("mgf");
  rep.input("n", o.n);
  rep.input("alpha", o.alpha);
  rep.input("t", o.t);
  rep.input("method", o.method);
  Real alpha = parse_real(o.alpha, cfg);
  Real t = parse_real(o.t, cfg);
  PrecisionContext ctx = cfg.ctx();

  const auto& all = mgf_methods();
  std::vector<std::string> run;
  if (o.method == "all") {
    run = all;
  } else {
    if (std::find(all.begin(), all.end(), o.method) == all.end())
      throw ValidationError("mgf: unknown method '" + o.method + "'");
    run = {o.method};
  }

  std::vector<Certified> vals;
  for (const auto& m : run) {
    Certified c = mgf(o.n, alpha, t, m, ctx);
    rep.result("mgf", c.value.str(), m, c.bits_used, fmt_short(c.tol_achieved));
    vals.push_back(c);
  }

  if (o.method == "all") {
    PrecisionGuard g(cfg.bits);
    // The first four routes are exact reformulations of one determinant; the
    // fifth (quadrature) is the independent cross-check with its own gate.
    Real max_exact(0L);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = i + 1; j < 4; ++j) {
        Real d = rel_diff(vals[i].value, vals[j].value);
        if (d > max_exact) max_exact = d;
      }
    Real quad_dev = rel_diff(vals[4].value, vals[0].value);
    rep.result("max_pairwise_rel", fmt_short(max_exact), "consensus", cfg.bits, "");
    rep.check("consensus-exact-routes", below(max_exact, cfg.gate(1e-20)),
              pass_detail(max_exact, cfg.gate(1e-20)));
    rep.check("consensus-quadrature", below(quad_dev, cfg.gate(1e-10)),
              pass_detail(quad_dev, cfg.gate(1e-10)));
  }
}

void handle_cumulants(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("cumulants");
  rep.input("n", o.n_str);
  rep.input("alpha", o.alpha);
  rep.input("order", o.order);
  (void)cfg;
  if (o.order < 1) throw ValidationError("cumulants: order must be >= 1");
  Rat n = rat_parse(o.n_str);
  Rat alpha = rat_parse(o.alpha);
  CumulantSeries cs = cumulants_exact(n, alpha, static_cast<int>(o.order));
  for (int p = 1; p <= cs.order; ++p)
    rep.result("kappa_" + std::to_string(p), rat_str(cs.kappa[p]), "series-ode", 0, "0");
  std::vector<Rat> m = moments_from_cumulants(cs.kappa);
  for (int p = 1; p <= cs.order; ++p)
    rep.result("m_" + std::to_string(p), rat_str(m[p]), "series-ode", 0, "0");
  int valid_through = 0;
  for (int p = 1; p <= cs.order && cs.valid[p]; ++p) valid_through = p;
  rep.result("valid_through_order", std::to_string(valid_through), "series-ode", 0, "0");
}

void handle_limit_series(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("limit-series");
  rep.input("kind", o.kind);
  rep.input("order", o.order);
  (void)cfg;
  if (o.order < 1) throw ValidationError("limit-series: order must be >= 1");
  int order = static_cast<int>(o.order);

  if (o.kind == "F") {
    Series<Rat> f = f_limit_series(order);
    for (int p = 1; p <= order; ++p)
      rep.result("f_" + std::to_string(p), rat_str(f.at(p)), "series-ode", 0, "0");
    rep.check("quadratic-identity", series_is_zero(f_quad_residual(f)),
              "first-integral identity holds exactly through the computed order");
    rep.check("auxiliary-identity", series_is_zero(f_aux_residual(f)),
              "companion identity holds exactly through the computed order");
    return;
  }

  if (o.alpha.empty())
    throw ValidationError("limit-series: --alpha is required for kinds Y and r");
  rep.input("alpha", o.alpha);
  Rat alpha = rat_parse(o.alpha);

  if (o.kind == "Y") {
    Series<Rat> y = y_limit_series(alpha, order);
    for (int p = 1; p <= order; ++p)
      rep.result("y_" + std::to_string(p), rat_str(y.at(p)), "series-ode", 0, "0");
    int cross = std::min(order, 4);
    Series<Rat> sym = y_limit_from_symbolic(alpha, cross);
    bool ok = true;
    for (int p = 1; p <= cross; ++p) ok = ok && sym.at(p) == y.at(p);
    rep.check("symbolic-n-limit", ok,
              "coefficients match the limit of the finite-n solution through order " +
                  std::to_string(cross));
    return;
  }

  if (o.kind == "r") {
    Series<Rat> r = r_series(alpha, order);
    for (int p = 0; p <= order; ++p)
      rep.result("r_" + std::to_string(p), rat_str(r.at(p)), "series-ode", 0, "0");
    bool third = order < 3 || series_is_zero(r_third_order_residual(r));
    rep.check("third-order-companion", third,
              "alpha-independent third-order identity holds exactly");
    Series<Rat> y = y_limit_series(alpha, order);
    bool map_ok = true;
    Rat two_p(1);
    for (int p = 1; p <= order; ++p) {
      two_p = two_p * 2;
      map_ok = map_ok && Rat(r.at(p) * two_p) == Rat(Rat(-2) * y.at(p));
    }
    rep.check("map-to-limit-Y", map_ok,
              "r(2s) and the scaled limit series agree coefficientwise");
    return;
  }

  throw ValidationError("limit-series: kind must be one of Y, F, r");
}

void handle_recurrence(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("recurrence");
  rep.input("v", o.v);
  rep.input("t", o.t);
  rep.input("steps", o.steps);
  rep.input("a", o.a);
  rep.input("b", o.b);
  if (o.steps < 1) throw ValidationError("recurrence: steps must be >= 1");
  Real v = parse_real(o.v, cfg);
  Real t = parse_real(o.t, cfg);
  PrecisionGuard g(cfg.bits);
  BesselCombination c(parse_real(o.a, cfg), parse_real(o.b, cfg));

  std::vector<RecurrenceState> orbit;
  orbit.push_back(recurrence_seed(c, v, t));
  for (long k = 0; k < o.steps; ++k) orbit.push_back(recurrence_step(orbit.back()));

  for (long k = 0; k <= o.steps; ++k) {
    rep.result("q_" + std::to_string(k), fmt_complex(orbit[k].q), "dpii-orbit", cfg.bits, "");
    rep.result("p_" + std::to_string(k), fmt_complex(orbit[k].p), "dpii-orbit", cfg.bits, "");
  }

  for (long k = 1; k + 1 <= o.steps; ++k) {
    RelationReport rr =
        alt_recurrence_residual(orbit[k - 1].q, orbit[k].q, orbit[k + 1].q, k, v, t);
    rep.check("alt-dpii-" + std::to_string(k), below(rr.relative, cfg.gate(1e-18)),
              pass_detail(rr.relative, cfg.gate(1e-18)));
  }
  for (long k = 1; k <= o.steps; ++k) {
    // q_k + t/q_{k-1} = k / p_k, the first integral coupling the two sequences.
    auto rr = sum_terms<Complex>(
        {orbit[k].q, Complex(t) / orbit[k - 1].q, Complex(0L) - Complex(k) / orbit[k].p});
    rep.check("pq-coupling-" + std::to_string(k), below(rr.relative, cfg.gate(1e-20)),
              pass_detail(rr.relative, cfg.gate(1e-20)));
  }
}

void handle_toda(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("toda");
  rep.input("n", o.n);
  rep.input("v", o.v);
  rep.input("t", o.t);
  rep.input("a", o.a);
  rep.input("b", o.b);
  if (o.n < 1) throw ValidationError("toda: n must be >= 1");
  Real v = parse_real(o.v, cfg);
  Real t = parse_real(o.t, cfg);
  BesselCombination c(parse_real(o.a, cfg), parse_real(o.b, cfg));
  TodaReport tr = toda_verify(c, v, o.n, t, Real(0L), cfg.ctx());
  rep.result("lhs", fmt_complex(tr.lhs), "wronskian-lattice", tr.bits_used, "");
  rep.result("rhs", fmt_complex(tr.rhs), "wronskian-lattice", tr.bits_used, "");
  rep.check("toda-identity", below(tr.relative, cfg.gate(1e-12)),
            pass_detail(tr.relative, cfg.gate(1e-12)));
}

void emit_real_jet(Report& rep, const char* name, const Jet2<Real>& j, long bits) {
  rep.result(name, j.f.str(), "det-jet", bits, "");
  rep.result(std::string(name) + "_d1", j.f1.str(), "det-jet", bits, "");
  rep.result(std::string(name) + "_d2", j.f2.str(), "det-jet", bits, "");
}

void handle_residual(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("residual");
  rep.input("kind", o.kind);
  PrecisionContext ctx = cfg.ctx();
  Real t = parse_real(o.t, cfg);

  if (o.kind == "y" || o.kind == "h") {
    rep.input("n", o.n);
    rep.input("alpha", o.alpha);
    rep.input("t", o.t);
    Real alpha = parse_real(o.alpha, cfg);
    DetResult<Real> d = hankel_det(o.n, alpha, t, 3, ctx);
    PrecisionGuard g(cfg.bits);
    Jet2<Real> y = t_dlog_jet(t, d.dlog);
    ResidualReport<Real> rr{Real(0L), Real(0L), Real(0L)};
    if (o.kind == "y") {
      rr = y_form_residual(y, Real(o.n), alpha);
      emit_real_jet(rep, "y", y, d.bits_used);
    } else {
      Jet2<Real> h{t, y.f - t / Real(2L) + alpha * alpha / Real(4L),
                   y.f1 - Real(1L) / Real(2L), y.f2};
      auto pm = params_mgf<Real>(Real(o.n), alpha);
      rr = h_form_residual(h, pm[0], pm[1]);
      emit_real_jet(rep, "h", h, d.bits_used);
    }
    rep.result("relative_residual", fmt_short(rr.relative), "det-jet", d.bits_used, "");
    rep.check("residual-" + o.kind, below(rr.relative, cfg.gate(1e-15)),
              pass_detail(rr.relative, cfg.gate(1e-15)));
    return;
  }

  if (o.kind == "siii") {
    rep.input("n", o.n);
    rep.input("v", o.v);
    rep.input("t", o.t);
    rep.input("a", o.a);
    rep.input("b", o.b);
    Real v = parse_real(o.v, cfg);
    BesselCombination c(parse_real(o.a, cfg), parse_real(o.b, cfg));
    ComplexJet2 sj = sigmahat_jet(c, v, o.n, t, ctx);
    PrecisionGuard g(cfg.bits);
    Jet2<Complex> jet{Complex(sj.t), sj.f, sj.f1, sj.f2};
    auto pr = params_sigma<Complex>(Complex(o.n), Complex(v));
    auto rr = sigma_form_residual(jet, pr[0], pr[1]);
    rep.result("sigma", fmt_complex(jet.f), "det-jet", cfg.bits, "");
    rep.result("relative_residual", fmt_short(rr.relative), "det-jet", cfg.bits, "");
    rep.check("residual-siii", below(rr.relative, cfg.gate(1e-12)),
              pass_detail(rr.relative, cfg.gate(1e-12)));
    return;
  }

  if (o.kind == "piii") {
    rep.input("v", o.v);
    rep.input("t", o.t);
    rep.input("a", o.a);
    rep.input("b", o.b);
    Real v = parse_real(o.v, cfg);
    BesselCombination c(parse_real(o.a, cfg), parse_real(o.b, cfg));
    PrecisionGuard g(cfg.bits);
    Jet2<Complex> jet = q_seed_jet(c, v, t);
    auto rr = q_form_residual(jet, Complex(v), Complex(0L) - Complex(v));
    rep.result("q", fmt_complex(jet.f), "bessel-ladder", cfg.bits, "");
    rep.result("relative_residual", fmt_short(rr.relative), "bessel-ladder", cfg.bits, "");
    rep.check("residual-piii", below(rr.relative, cfg.gate(1e-12)),
              pass_detail(rr.relative, cfg.gate(1e-12)));
    return;
  }

  if (o.kind == "sv") {
    rep.input("n", o.n);
    rep.input("alpha", o.alpha);
    rep.input("mu", o.mu);
    rep.input("t", o.t);
    Real alpha = parse_real(o.alpha, cfg);
    Real mu = parse_real(o.mu, cfg);
    DetResult<Real> d = gap_det(o.n, alpha, mu, t, 3, ctx);
    PrecisionGuard g(cfg.bits);
    Jet2<Real> u = t_dlog_jet(t, d.dlog);
    u.f = u.f - mu * Real(o.n);
    auto nu = params_gap<Real>(Real(o.n), alpha, mu);
    auto rr = sigma_v_form_residual(u, nu);
    emit_real_jet(rep, "U", u, d.bits_used);
    rep.result("relative_residual", fmt_short(rr.relative), "det-jet", d.bits_used, "");
    rep.check("residual-sv", below(rr.relative, cfg.gate(1e-8)),
              pass_detail(rr.relative, cfg.gate(1e-8)));
    return;
  }

  if (o.kind == "jacobi") {
    rep.input("n", o.n);
    rep.input("alpha", o.alpha);
    rep.input("beta", o.beta);
    rep.input("t", o.t);
    Real alpha = parse_real(o.alpha, cfg);
    Real beta = parse_real(o.beta, cfg);
    DetResult<Real> d = jacobi_hankel_det(o.n, alpha, beta, t, 3, ctx);
    PrecisionGuard g(cfg.bits);
    Jet2<Real> h = t_dlog_jet(t, d.dlog);
    auto rr = jacobi_h_form_residual(h, Real(o.n), alpha, beta);
    emit_real_jet(rep, "H", h, d.bits_used);
    rep.result("relative_residual", fmt_short(rr.relative), "det-jet", d.bits_used, "");
    rep.check("residual-jacobi", below(rr.relative, cfg.gate(1e-8)),
              pass_detail(rr.relative, cfg.gate(1e-8)));
    return;
  }

  throw ValidationError("residual: kind must be one of siii, sv, y, piii, h, jacobi");
}

void handle_hard_edge(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("hard-edge");
  rep.input("alpha", o.alpha_int);
  rep.input("mu", o.mu);
  rep.input("t", o.t);
  Real mu = parse_real(o.mu, cfg);
  Real t = parse_real(o.t, cfg);
  PrecisionContext ctx = cfg.ctx();
  DetResult<Real> d = hard_edge_det(o.alpha_int, mu, t, 1, ctx);
  PrecisionGuard g(cfg.bits);
  Real w = t * d.dlog[0];
  rep.result("value", d.value.str(), "hard-edge-det", d.bits_used, fmt_short(d.tol_achieved));
  rep.result("t_dlog", w.str(), "hard-edge-det", d.bits_used, "");
  if (o.n > 0) {
    rep.input("n", o.n);
    Real s = t / Real(4L * o.n);
    DetResult<Real> fin = gap_det(o.n, Real(o.alpha_int), mu, s, 1, ctx);
    Real u_n = s * fin.dlog[0];
    rep.result("finite_n_t_dlog", u_n.str(), "gap-det", fin.bits_used, "");
    rep.result("scaling_gap", fmt_short(abs(u_n - w)), "gap-det", fin.bits_used, "");
  }
}

void handle_gap(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("gap");
  rep.input("n", o.n);
  rep.input("alpha", o.alpha);
  rep.input("mu", o.mu);
  rep.input("t", o.t);
  Real alpha = parse_real(o.alpha, cfg);
  Real mu = parse_real(o.mu, cfg);
  Real t = parse_real(o.t, cfg);
  DetResult<Real> d = gap_det(o.n, alpha, mu, t, 3, cfg.ctx());
  PrecisionGuard g(cfg.bits);
  rep.result("value", d.value.str(), "gap-det", d.bits_used, fmt_short(d.tol_achieved));
  Jet2<Real> u = t_dlog_jet(t, d.dlog);
  u.f = u.f - mu * Real(o.n);
  emit_real_jet(rep, "U", u, d.bits_used);
  auto rr = sigma_v_form_residual(u, params_gap<Real>(Real(o.n), alpha, mu));
  rep.check("residual-sv", below(rr.relative, cfg.gate(1e-8)),
            pass_detail(rr.relative, cfg.gate(1e-8)));
}

void emit_state(Report& rep, const HamiltonianState<Rat>& s, const std::string& method) {
  rep.result("p", rat_str(s.p), method, 0, "0");
  rep.result("q", rat_str(s.q), method, 0, "0");
  rep.result("t", rat_str(s.t), method, 0, "0");
  rep.result("v1", rat_str(s.v1), method, 0, "0");
  rep.result("v2", rat_str(s.v2), method, 0, "0");
}

void handle_backlund(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("backlund");
  // State flags: --a = p, --b = q, --t = t, --alpha = v1, --beta = v2.
  rep.input("a", o.a);
  rep.input("b", o.b);
  rep.input("t", o.t);
  rep.input("alpha", o.alpha);
  rep.input("beta", o.beta);
  rep.input("method", o.method);
  rep.input("steps", o.steps);
  (void)cfg;
  if (o.steps < 1) throw ValidationError("backlund: steps must be >= 1");
  HamiltonianState<Rat> s{rat_parse(o.a), rat_parse(o.b), rat_parse(o.t), rat_parse(o.alpha),
                          rat_parse(o.beta)};

  HamiltonianState<Rat> cur = s;
  for (long k = 0; k < o.steps; ++k) {
    if (o.method == "t1")
      cur = apply_t1(cur);
    else if (o.method == "s0")
      cur = apply_backlund(cur, BacklundOp::S0);
    else if (o.method == "s1")
      cur = apply_backlund(cur, BacklundOp::S1);
    else if (o.method == "s2")
      cur = apply_backlund(cur, BacklundOp::S2);
    else
      throw ValidationError("backlund: method must be one of s0, s1, s2, t1");
  }
  emit_state(rep, cur, o.method);
  rep.result("tH", rat_str(hamiltonian_t(cur)), o.method, 0, "0");

  auto state_eq = [](const HamiltonianState<Rat>& x, const HamiltonianState<Rat>& y) {
    return x.p == y.p && x.q == y.q && x.t == y.t && x.v1 == y.v1 && x.v2 == y.v2;
  };
  if (!(s.p == Rat(1))) {
    HamiltonianState<Rat> twice = apply_backlund(apply_backlund(s, BacklundOp::S1), BacklundOp::S1);
    rep.check("s1-involution", state_eq(twice, s), "applying the swap twice returns the state");
  }
  HamiltonianState<Rat> twice2 = apply_backlund(apply_backlund(s, BacklundOp::S2), BacklundOp::S2);
  rep.check("s2-involution", state_eq(twice2, s), "applying the sign flip twice returns the state");
  if (o.method == "t1") {
    bool shifted = cur.v1 == Rat(s.v1 + o.steps) && cur.v2 == Rat(s.v2 + o.steps) && cur.t == s.t;
    rep.check("t1-parameter-shift", shifted,
              "both parameters advance by the step count and t is restored");
  }
}

void handle_sample(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("sample");
  rep.input("n", o.n);
  rep.input("alpha", o.alpha);
  rep.input("t-grid", o.t_grid);
  rep.input("count", o.steps);
  rep.input("seed", static_cast<long>(cfg.seed));
  if (o.n < 1) throw ValidationError("sample: n must be >= 1");
  if (o.steps < 1) throw ValidationError("sample: sample count (--steps) must be >= 1");
  Real alpha = parse_real(o.alpha, cfg);
  double alpha_d = alpha.to_double();

  std::vector<std::string> toks = split_list(o.t_grid);
  std::vector<std::pair<double, std::string>> grid;
  for (const auto& tok : toks) grid.emplace_back(parse_real(tok, cfg).to_double(), tok);
  std::sort(grid.begin(), grid.end());
  std::vector<double> ts;
  for (auto& gpt : grid) ts.push_back(gpt.first);

  LueSampleStats st = sample_lue_stats(o.n, alpha_d, o.steps, cfg.seed, ts);
  rep.result("mean_inv_trace", fmt_double(st.mean_inv_trace), "monte-carlo", 53, "");
  rep.result("se_inv_trace", fmt_double(st.se_inv_trace), "monte-carlo", 53, "");
  for (size_t i = 0; i < grid.size(); ++i) {
    rep.result("mgf@t=" + grid[i].second, fmt_double(st.mgf[i]), "monte-carlo", 53, "");
    rep.result("mgf_se@t=" + grid[i].second, fmt_double(st.mgf_se[i]), "monte-carlo", 53, "");
  }

  PrecisionContext ctx = cfg.ctx();
  double kappa1 = (Real(o.n) / alpha).to_double();
  double dev = std::abs(st.mean_inv_trace - kappa1);
  rep.check("mean-vs-kappa1", dev <= 3 * st.se_inv_trace,
            "deviation " + fmt_double(dev) + " vs 3*se = " + fmt_double(3 * st.se_inv_trace));
  for (size_t i = 0; i < grid.size(); ++i) {
    Certified ref = mgf(o.n, alpha, parse_real(grid[i].second, cfg), "dpii", ctx);
    double d = std::abs(st.mgf[i] - ref.value.to_double());
    rep.check("mgf-vs-det@t=" + grid[i].second, d <= 3 * st.mgf_se[i],
              "deviation " + fmt_double(d) + " vs 3*se = " + fmt_double(3 * st.mgf_se[i]));
  }
}

void handle_sweep(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("sweep");
  rep.input("n", o.n);
  rep.input("alpha", o.alpha);
  rep.input("t-grid", o.t_grid);
  rep.input("method", o.method);
  Real alpha = parse_real(o.alpha, cfg);
  PrecisionContext ctx = cfg.ctx();

  const auto& all = mgf_methods();
  std::vector<std::string> run;
  if (o.method == "all")
    run = all;
  else if (std::find(all.begin(), all.end(), o.method) != all.end())
    run = {o.method};
  else
    throw ValidationError("sweep: unknown method '" + o.method + "'");

  std::vector<std::pair<double, std::string>> grid;
  for (const auto& tok : split_list(o.t_grid))
    grid.emplace_back(parse_real(tok, cfg).to_double(), tok);
  std::sort(grid.begin(), grid.end());

  for (const auto& [tv, tok] : grid) {
    (void)tv;
    Real t = parse_real(tok, cfg);
    for (const auto& m : run) {
      Certified c = mgf(o.n, alpha, t, m, ctx);
      rep.result("mgf@t=" + tok, c.value.str(), m, c.bits_used, fmt_short(c.tol_achieved));
    }
  }
}

void handle_verify(Report& rep, const Config& cfg, const Opts& o) {
  rep.command("verify");
  rep.input("suite", o.suite);
  bool full = o.suite == "full";
  if (!full && o.suite != "quick")
    throw ValidationError("verify: suite must be 'quick' or 'full'");
  PrecisionContext ctx = cfg.ctx();

  // -- determinant route consensus ------------------------------------------
  struct Pt {
    long n;
    const char* alpha;
    const char* t;
  };
  std::vector<Pt> pts = {{2, "1/2", "1"}};
  if (full) {
    pts.push_back({1, "0", "1/10"});
    pts.push_back({3, "5/2", "5"});
    pts.push_back({5, "1", "1"});
  }
  for (const auto& pt : pts) {
    Real alpha = parse_real(pt.alpha, cfg);
    Real t = parse_real(pt.t, cfg);
    std::vector<Certified> vals;
    for (const auto& m : mgf_methods()) vals.push_back(mgf(pt.n, alpha, t, m, ctx));
    PrecisionGuard g(cfg.bits);
    Real max_exact(0L);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = i + 1; j < 4; ++j) {
        Real d = rel_diff(vals[i].value, vals[j].value);
        if (d > max_exact) max_exact = d;
      }
    Real quad_dev = rel_diff(vals[4].value, vals[0].value);
    std::string tag = "@n=" + std::to_string(pt.n) + ",alpha=" + pt.alpha + ",t=" + pt.t;
    rep.check("consensus-exact" + tag, below(max_exact, cfg.gate(1e-20)),
              pass_detail(max_exact, cfg.gate(1e-20)));
    rep.check("consensus-quadrature" + tag, below(quad_dev, cfg.gate(1e-10)),
              pass_detail(quad_dev, cfg.gate(1e-10)));
  }

  // -- second-order characterization of the log-derivative -------------------
  {
    std::vector<Pt> ypts = {{2, "1/2", "1"}};
    if (full) ypts.push_back({3, "1", "5"});
    for (const auto& pt : ypts) {
      Real alpha = parse_real(pt.alpha, cfg);
      Real t = parse_real(pt.t, cfg);
      DetResult<Real> d = hankel_det(pt.n, alpha, t, 3, ctx);
      PrecisionGuard g(cfg.bits);
      Jet2<Real> y = t_dlog_jet(t, d.dlog);
      auto rr = y_form_residual(y, Real(pt.n), alpha);
      rep.check("y-residual@n=" + std::to_string(pt.n) + ",alpha=" + pt.alpha + ",t=" + pt.t,
                below(rr.relative, cfg.gate(1e-15)), pass_detail(rr.relative, cfg.gate(1e-15)));
    }
  }

  // -- sigma-form residual of the shifted Toeplitz observable ----------------
  {
    Real v = parse_real("1/2", cfg);
    Real t = parse_real("1", cfg);
    BesselCombination c(Real(1L), Real(1L));
    ComplexJet2 sj = sigmahat_jet(c, v, 2, t, ctx);
    PrecisionGuard g(cfg.bits);
    Jet2<Complex> jet{Complex(sj.t), sj.f, sj.f1, sj.f2};
    auto pr = params_sigma<Complex>(Complex(2L), Complex(v));
    auto rr = sigma_form_residual(jet, pr[0], pr[1]);
    rep.check("sigma-residual@n=2,v=1/2,t=1", below(rr.relative, cfg.gate(1e-12)),
              pass_detail(rr.relative, cfg.gate(1e-12)));
  }

  // -- seed orbit variable against its second-order equation -----------------
  {
    Real v = parse_real("1/2", cfg);
    Real t = parse_real("1", cfg);
    PrecisionGuard g(cfg.bits);
    BesselCombination c(Real(1L), Real(0L));
    Jet2<Complex> jet = q_seed_jet(c, v, t);
    auto rr = q_form_residual(jet, Complex(v), Complex(0L) - Complex(v));
    rep.check("piii-q-residual@v=1/2,t=1", below(rr.relative, cfg.gate(1e-12)),
              pass_detail(rr.relative, cfg.gate(1e-12)));
  }

  // -- double-Wronskian vs Toeplitz reduction --------------------------------
  {
    std::vector<long> ns = {3};
    if (full) ns.push_back(4);
    Real v = parse_real("1/2", cfg);
    Real t = parse_real("1", cfg);
    BesselCombination c(Real(1L), Real(1L));
    for (long n : ns) {
      DetResult<Complex> w = wronskian_det(c, v, n, t, 0, Real(0L), ctx);
      DetResult<Complex> tp = toeplitz_l_det(c, v, n, t, 0, ctx);
      PrecisionGuard g(cfg.bits);
      Complex scaled = tp.value * pow(t / Real(4L), n * (n - 1) / 2);
      Real d = rel_diff(w.value, scaled);
      rep.check("wronskian-toeplitz@n=" + std::to_string(n), below(d, cfg.gate(1e-20)),
                pass_detail(d, cfg.gate(1e-20)));
    }
  }

  // -- lattice step identity --------------------------------------------------
  {
    Real v = parse_real("1/2", cfg);
    Real t = parse_real("1", cfg);
    BesselCombination c(Real(1L), Real(1L));
    TodaReport tr = toda_verify(c, v, 2, t, Real(0L), ctx);
    rep.check("toda@n=2,v=1/2,t=1", below(tr.relative, cfg.gate(1e-12)),
              pass_detail(tr.relative, cfg.gate(1e-12)));
    if (full) {
      TodaReport tg = toda_verify(c, v, 2, t, parse_real("1/3", cfg), ctx);
      rep.check("toda-gauge@n=2,v=1/2,t=1,kappa=1/3", below(tg.relative, cfg.gate(1e-12)),
                pass_detail(tg.relative, cfg.gate(1e-12)));
    }
  }

  // -- discrete orbit ----------------------------------------------------------
  {
    Real v = parse_real("1/2", cfg);
    Real t = parse_real("1", cfg);
    PrecisionGuard g(cfg.bits);
    BesselCombination c(Real(1L), Real(0L));
    std::vector<RecurrenceState> orbit{recurrence_seed(c, v, t)};
    for (int k = 0; k < 6; ++k) orbit.push_back(recurrence_step(orbit.back()));
    Real worst_alt(0L), worst_pq(0L);
    for (long k = 1; k + 1 < static_cast<long>(orbit.size()); ++k) {
      auto rr = alt_recurrence_residual(orbit[k - 1].q, orbit[k].q, orbit[k + 1].q, k, v, t);
      if (rr.relative > worst_alt) worst_alt = rr.relative;
      auto pq = sum_terms<Complex>(
          {orbit[k].q, Complex(t) / orbit[k - 1].q, Complex(0L) - Complex(k) / orbit[k].p});
      if (pq.relative > worst_pq) worst_pq = pq.relative;
    }
    rep.check("alt-dpii-orbit@v=1/2,t=1", below(worst_alt, cfg.gate(1e-18)),
              pass_detail(worst_alt, cfg.gate(1e-18)));
    rep.check("pq-coupling-orbit@v=1/2,t=1", below(worst_pq, cfg.gate(1e-20)),
              pass_detail(worst_pq, cfg.gate(1e-20)));
  }

  // -- exact cumulants ---------------------------------------------------------
  {
    Rat n(2), alpha(3);
    CumulantSeries cs = cumulants_exact(n, alpha, 2);
    Rat k1 = n / alpha;
    Rat k2 = (n * n + n * alpha) / (alpha * alpha * (alpha * alpha - 1));
    rep.check("cumulants-exact@n=2,alpha=3", cs.kappa[1] == k1 && cs.kappa[2] == k2,
              "first two cumulants match their closed forms exactly");
  }
  if (full) {
    Rat n(1), alpha(4);
    CumulantSeries cs = cumulants_exact(n, alpha, 3);
    Real ref = kappa3_reference(1, Real(4L), ctx);
    PrecisionGuard g(cfg.bits);
    Real diff = abs(to_real(cs.kappa[3]) - ref);
    rep.check("kappa3-vs-reference@n=1,alpha=4", below(diff, cfg.gate(1e-6)),
              "absolute deviation " + fmt_short(diff));
  }

  // -- limiting series identities ----------------------------------------------
  {
    Series<Rat> f = f_limit_series(8);
    bool ok = f.at(1) == Rat(1) && f.at(2) == Rat(2) && series_is_zero(f_quad_residual(f)) &&
              series_is_zero(f_aux_residual(f));
    rep.check("limit-f-identities", ok, "leading coefficients and both companions hold exactly");

    Rat a0(7, 2);
    Series<Rat> r = r_series(a0, 6);
    Series<Rat> y = y_limit_series(a0, 6);
    bool map_ok = series_is_zero(r_third_order_residual(r));
    Rat two_p(1);
    for (int p = 1; p <= 6; ++p) {
      two_p = two_p * 2;
      map_ok = map_ok && Rat(r.at(p) * two_p) == Rat(Rat(-2) * y.at(p));
    }
    rep.check("limit-r-map@alpha=7/2", map_ok, "scaled coefficients agree exactly");

    Series<Rat> sym = y_limit_from_symbolic(a0, 4);
    bool sym_ok = true;
    for (int p = 1; p <= 4; ++p) sym_ok = sym_ok && sym.at(p) == y.at(p);
    rep.check("limit-y-symbolic@alpha=7/2", sym_ok,
              "limit of the finite-n solution matches the direct series");
  }

  // -- parameter-shift algebra ---------------------------------------------------
  {
    HamiltonianState<Rat> s{Rat(2, 3), Rat(-5, 7), Rat(3, 2), Rat(1, 2), Rat(-1, 3)};
    HamiltonianState<Rat> shifted = apply_t1(s);
    bool ok = shifted.v1 == Rat(s.v1 + 1) && shifted.v2 == Rat(s.v2 + 1) && shifted.t == s.t;
    HamiltonianState<Rat> s1s1 = apply_backlund(apply_backlund(s, BacklundOp::S1), BacklundOp::S1);
    HamiltonianState<Rat> s2s2 = apply_backlund(apply_backlund(s, BacklundOp::S2), BacklundOp::S2);
    ok = ok && s1s1.p == s.p && s1s1.q == s.q && s2s2.p == s.p && s2s2.q == s.q;
    rep.check("backlund-t1-shift", ok, "shift and involution relations hold exactly");
  }

  if (full) {
    // -- large-argument constant of the shifted observable ----------------------
    BoundaryReport br = boundary_constant(2, parse_real("5/2", cfg), parse_real("1e6", cfg), ctx);
    PrecisionGuard g(cfg.bits);
    Real err = abs(br.constant_estimate - br.reference);
    rep.check("boundary-constant@n=2,v=5/2,t=1e6", below(err, cfg.gate(1e-2)),
              "absolute deviation " + fmt_short(err));
  }

  if (full) {
    // -- small-t scaling limit of the normalized average -------------------------
    Certified lim = limit_mgf(Rat(2), parse_real("1/10", cfg), 12, ctx);
    Real t200;
    {
      PrecisionGuard g0(cfg.max_bits);
      t200 = parse_real("1/10", cfg) / Real(200L);
    }
    // The finite-n recurrence sheds ~n log2(n) bits of cancellation at small t,
    // so this companion needs a far higher certification ceiling than the rest.
    PrecisionContext deep(4096, ctx.tol, 32768);
    Certified fin = mgf(200, Real(2L), t200, "dpii", deep);
    PrecisionGuard g(cfg.bits);
    Real diff = abs(lim.value - fin.value);
    rep.check("limit-mgf@alpha=2,t=1/10", below(diff, cfg.gate(1e-3)),
              "absolute deviation " + fmt_short(diff) + " against n=200");
  }

  if (full) {
    // -- hard-edge scaling trend --------------------------------------------------
    Real mu = parse_real("2", cfg);
    Real t = parse_real("1", cfg);
    DetResult<Real> he = hard_edge_det(1, mu, t, 1, ctx);
    PrecisionGuard g(cfg.bits);
    Real w = t * he.dlog[0];
    std::vector<Real> gapv;
    for (long n : {10L, 20L}) {
      Real s = t / Real(4L * n);
      DetResult<Real> fin = gap_det(n, Real(1L), mu, s, 1, ctx);
      gapv.push_back(abs(s * fin.dlog[0] - w));
    }
    rep.check("hard-edge-trend@alpha=1,mu=2,t=1", gapv[1] < gapv[0],
              "scaling gap " + fmt_short(gapv[0]) + " at n=10 shrinks to " + fmt_short(gapv[1]) +
                  " at n=20");
  }

  if (full) {
    // -- quadrature-backed sigma-PV residuals --------------------------------------
    {
      Real t = parse_real("1/2", cfg);
      DetResult<Real> d = jacobi_hankel_det(1, Real(1L), parse_real("3/2", cfg), t, 3, ctx);
      PrecisionGuard g(cfg.bits);
      Jet2<Real> h = t_dlog_jet(t, d.dlog);
      auto rr = jacobi_h_form_residual(h, Real(1L), Real(1L), parse_real("3/2", cfg));
      rep.check("jacobi-residual@n=1,alpha=1,beta=3/2,t=1/2", below(rr.relative, cfg.gate(1e-8)),
                pass_detail(rr.relative, cfg.gate(1e-8)));
    }
    {
      Real t = parse_real("1/2", cfg);
      DetResult<Real> d = gap_det(1, parse_real("1/2", cfg), Real(1L), t, 3, ctx);
      PrecisionGuard g(cfg.bits);
      Jet2<Real> u = t_dlog_jet(t, d.dlog);
      u.f = u.f - Real(1L);
      auto rr = sigma_v_form_residual(u, params_gap<Real>(Real(1L), parse_real("1/2", cfg), Real(1L)));
      rep.check("gap-residual@n=1,alpha=1/2,mu=1,t=1/2", below(rr.relative, cfg.gate(1e-8)),
                pass_detail(rr.relative, cfg.gate(1e-8)));
    }
  }

  // -- sampler sanity -----------------------------------------------------------
  {
    long count = full ? 20000 : 4000;
    LueSampleStats st = sample_lue_stats(4, 6.0, count, 20250819u, {0.5});
    double kappa1 = 4.0 / 6.0;
    double dev = std::abs(st.mean_inv_trace - kappa1);
    rep.check("mc-mean@n=4,alpha=6", dev <= 3 * st.se_inv_trace,
              "deviation " + fmt_double(dev) + " vs 3*se = " + fmt_double(3 * st.se_inv_trace));
    Certified ref = mgf(4, Real(6L), parse_real("1/2", cfg), "dpii", ctx);
    double d = std::abs(st.mgf[0] - ref.value.to_double());
    rep.check("mc-mgf@n=4,alpha=6,t=1/2", d <= 3 * st.mgf_se[0],
              "deviation " + fmt_double(d) + " vs 3*se = " + fmt_double(3 * st.mgf_se[0]));
  }
}

// ---------------------------------------------------------------------------
// rendering

std::string render(const Report& rep, const Config& cfg) {
  if (cfg.format == "csv") {
    std::ostringstream o;
    o << "name,value,method,bits,tol_achieved\n";
    for (const auto& r : rep.doc["results"]) {
      o << csv_field(r["name"].get<std::string>()) << ","
        << csv_field(r["value"].get<std::string>()) << ","
        << csv_field(r["method"].get<std::string>()) << "," << r["bits"].get<long>() << ","
        << csv_field(r["tol_achieved"].get<std::string>()) << "\n";
    }
    return o.str();
  }
  return rep.doc.dump(2) + "\n";
}

}  // namespace

CliOutcome run_cli(const std::vector<std::string>& args) {
  Config cfg;
  Report rep;

  try {
    if (const char* env = std::getenv("PAINLEVE_TAU_BITS")) {
      std::string s(env);
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("PAINLEVE_TAU_BITS must be a positive integer");
      try {
        cfg.bits = std::stol(s);
      } catch (const std::exception&) {
        throw ValidationError("PAINLEVE_TAU_BITS out of range");
      }
      if (cfg.bits <= 0) throw ValidationError("PAINLEVE_TAU_BITS must be a positive integer");
    }

    CLI::App app{"extended-precision laboratory for the deformed-Laguerre tau sequence"};
    app.require_subcommand(1);
    Opts o;
    o.method = "all";       // per-subcommand callbacks remap their own default
    o.a = "1";              // pure first-kind Bessel combination
    o.b = "0";
    o.t_grid = "1/4,1/2";
    o.suite = "full";

    auto add_common = [&](CLI::App* s) {
      s->add_option("--bits", cfg.bits, "working precision in bits");
      s->add_option("--tol", cfg.tol_raw, "certification target / check gate override");
      s->add_option("--max-bits", cfg.max_bits, "precision escalation ceiling");
      s->add_option("--format", cfg.format, "output format")
          ->check(CLI::IsMember({"json", "csv"}));
      s->add_option("--out", cfg.out, "also write the report to this file");
      s->add_option("--seed", cfg.seed, "PRNG seed");
    };

    CLI::App* mgf_cmd = app.add_subcommand("mgf", "normalized average by one or all routes");
    mgf_cmd->add_option("--n", o.n)->required();
    mgf_cmd->add_option("--alpha", o.alpha)->required();
    mgf_cmd->add_option("--t", o.t)->required();
    mgf_cmd->add_option("--method", o.method);
    add_common(mgf_cmd);
    mgf_cmd->callback([&] { handle_mgf(rep, cfg, o); });

    CLI::App* cum = app.add_subcommand("cumulants", "exact rational cumulants and moments");
    cum->add_option("--n", o.n_str)->required();
    cum->add_option("--alpha", o.alpha)->required();
    cum->add_option("--order", o.order)->required();
    add_common(cum);
    cum->callback([&] { handle_cumulants(rep, cfg, o); });

    CLI::App* lim = app.add_subcommand("limit-series", "large-n series coefficients (Y, F, or r)");
    lim->add_option("kind", o.kind, "one of Y, F, r")->required();
    lim->add_option("--alpha", o.alpha);
    lim->add_option("--order", o.order);
    add_common(lim);
    lim->callback([&] { handle_limit_series(rep, cfg, o); });

    CLI::App* rec = app.add_subcommand("recurrence", "discrete orbit of (p, q) with residuals");
    rec->add_option("--v", o.v)->required();
    rec->add_option("--t", o.t)->required();
    rec->add_option("--steps", o.steps);
    rec->add_option("--a", o.a);
    rec->add_option("--b", o.b);
    add_common(rec);
    rec->callback([&] { handle_recurrence(rep, cfg, o); });

    CLI::App* toda = app.add_subcommand("toda", "lattice identity on the determinant sequence");
    toda->add_option("--n", o.n)->required();
    toda->add_option("--v", o.v)->required();
    toda->add_option("--t", o.t)->required();
    toda->add_option("--a", o.a);
    toda->add_option("--b", o.b);
    add_common(toda);
    toda->callback([&] { handle_toda(rep, cfg, o); });

    CLI::App* res = app.add_subcommand("residual", "second-order equation residual of an observable");
    res->add_option("kind", o.kind, "one of siii, sv, y, piii, h, jacobi")->required();
    res->add_option("--n", o.n);
    res->add_option("--alpha", o.alpha);
    res->add_option("--beta", o.beta);
    res->add_option("--mu", o.mu);
    res->add_option("--v", o.v);
    res->add_option("--t", o.t)->required();
    res->add_option("--a", o.a);
    res->add_option("--b", o.b);
    add_common(res);
    res->callback([&] { handle_residual(rep, cfg, o); });

    CLI::App* he = app.add_subcommand("hard-edge", "scaled Toeplitz determinant at the hard edge");
    he->add_option("--alpha", o.alpha_int)->required();
    he->add_option("--mu", o.mu)->required();
    he->add_option("--t", o.t)->required();
    he->add_option("--n", o.n, "also evaluate the finite-n quantity at s = t/4n");
    add_common(he);
    he->callback([&] { handle_hard_edge(rep, cfg, o); });

    CLI::App* gap = app.add_subcommand("gap", "generalized gap determinant and its residual");
    gap->add_option("--n", o.n)->required();
    gap->add_option("--alpha", o.alpha)->required();
    gap->add_option("--mu", o.mu)->required();
    gap->add_option("--t", o.t)->required();
    add_common(gap);
    gap->callback([&] { handle_gap(rep, cfg, o); });

    CLI::App* bk = app.add_subcommand(
        "backlund", "apply symmetries to a rational state (--a=p --b=q --t=t --alpha=v1 --beta=v2)");
    bk->add_option("--a", o.a)->required();
    bk->add_option("--b", o.b)->required();
    bk->add_option("--t", o.t)->required();
    bk->add_option("--alpha", o.alpha)->required();
    bk->add_option("--beta", o.beta)->required();
    bk->add_option("--method", o.method, "one of s0, s1, s2, t1")
        ->check(CLI::IsMember({"s0", "s1", "s2", "t1"}));
    bk->add_option("--steps", o.steps);
    add_common(bk);
    bk->callback([&] {
      if (!bk->count("--method")) o.method = "t1";
      if (!bk->count("--steps")) o.steps = 1;
      handle_backlund(rep, cfg, o);
    });

    CLI::App* smp = app.add_subcommand("sample", "Monte-Carlo sampler with determinant cross-checks");
    smp->add_option("--n", o.n)->required();
    smp->add_option("--alpha", o.alpha)->required();
    smp->add_option("--t-grid", o.t_grid);
    smp->add_option("--steps", o.steps, "sample count");
    add_common(smp);
    smp->callback([&] {
      if (!smp->count("--steps")) o.steps = 10000;
      handle_sample(rep, cfg, o);
    });

    CLI::App* ver = app.add_subcommand("verify", "run the cross-module check suite");
    ver->add_option("--suite", o.suite, "quick or full");
    add_common(ver);
    ver->callback([&] { handle_verify(rep, cfg, o); });

    CLI::App* swp = app.add_subcommand("sweep", "normalized average over a t grid");
    swp->add_option("--n", o.n)->required();
    swp->add_option("--alpha", o.alpha)->required();
    swp->add_option("--t-grid", o.t_grid)->required();
    swp->add_option("--method", o.method);
    add_common(swp);
    swp->callback([&] {
      if (!swp->count("--method")) o.method = "dpii";
      handle_sweep(rep, cfg, o);
    });

    std::vector<const char*> argv;
    argv.push_back("ptau");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      return {0, app.help()};
    } catch (const CLI::CallForAllHelp&) {
      return {0, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
      return {2, std::string("error: ") + e.what() + "\n"};
    }
  } catch (const CertificationError& e) {
    return {3, std::string("error: ") + e.what() + "\n"};
  } catch (const ConsensusError& e) {
    return {4, std::string("error: ") + e.what() + "\n"};
  } catch (const ValidationError& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }

  rep.doc["inputs"]["bits"] = cfg.bits;
  if (cfg.tol_raw != 0) rep.doc["inputs"]["tol"] = fmt_double(cfg.tol_raw);

  std::string text = render(rep, cfg);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) return {2, "error: cannot open output file " + cfg.out + "\n"};
    f << text;
  }
  return {rep.any_check_failed ? 4 : 0, text};
}

}  // namespace ptau
