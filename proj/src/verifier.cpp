#include "fhardy/verifier.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "fhardy/error.hpp"
#include "fhardy/functionals.hpp"
#include "fhardy/gagliardo.hpp"

namespace fhardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;

double conj(double p) { return p / (p - 1.0); }

GateResult gate(std::string name, double value, bool pass, std::string detail = {}) {
  return {std::move(name), value, pass, std::move(detail)};
}

// relative error of a product of powers prod I_i^e_i
double rel_power_error(std::initializer_list<std::pair<IntegralResult, double>> parts) {
  double rel = 0.0;
  for (const auto& [r, e] : parts) {
    if (r.value == 0.0) {
      if (r.error_bound != 0.0) return kInf;
      continue;
    }
    rel += std::abs(e) * r.error_bound / std::abs(r.value);
  }
  return rel;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::violation: return "violation";
    case Verdict::not_applicable: return "not_applicable";
    case Verdict::error: return "error";
  }
  return "?";
}

Record make_record(std::string id, double lhs, double lhs_error, double rhs, double rhs_error, double C,
                   bool additive) {
  Record r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.lhs_error = lhs_error;
  r.rhs_error = rhs_error;
  r.front_constant = C;
  r.additive = additive;
  double excess;
  double slack;
  if (additive) {
    r.ratio = std::exp(lhs - rhs);
    r.normalized_ratio = r.ratio;
    excess = lhs - rhs;
    slack = kSlack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    r.margin = lhs_error + rhs_error + slack;
  } else {
    if (rhs == 0.0)
      r.ratio = lhs > 0.0 ? kInf : 0.0;
    else
      r.ratio = lhs / rhs;
    const double bound = C * rhs;
    if (bound == 0.0 || std::isnan(bound))
      r.normalized_ratio = lhs > 0.0 ? kInf : 0.0;
    else
      r.normalized_ratio = lhs / bound;
    excess = std::isinf(C) ? -kInf : lhs - bound;
    slack = kSlack * std::max(std::abs(lhs), std::isinf(C) ? 0.0 : std::abs(bound));
    r.margin = lhs_error + (std::isinf(C) ? 0.0 : C * rhs_error) + slack;
  }
  if (excess <= slack)
    r.verdict = Verdict::pass;
  else if (excess <= r.margin)
    r.verdict = Verdict::inconclusive;
  else
    r.verdict = Verdict::violation;
  return r;
}

bool VerificationReport::applicable() const {
  for (const auto& g : gates)
    if (!g.pass) return false;
  return true;
}

ConstantsBundle compute_constants(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const double p = sc.p;
  const double q = sc.q;
  const double s = sc.s;
  const double Q = geom.Q();
  ConstantsBundle c;
  auto note = [&](const std::string& d) {
    if (!d.empty()) c.diagnostic += (c.diagnostic.empty() ? "" : "; ") + d;
  };
  switch (sc.theorem) {
    case Theorem::integral_hardy: {
      const SupResult d = d1_integral_hardy(sc.weights.g_expr(), sc.weights.h_expr(), p, q, geom);
      c.d1 = d.value;
      note(d.diagnostic);
      if (sc.weights.alpha && sc.weights.beta) {
        try {
          const double closed = d1_power_weights(*sc.weights.alpha, *sc.weights.beta, p, q, Q, geom.sphere_measure());
          std::ostringstream os;
          os.precision(17);
          os << "closed-form power-weight D1 = " << closed;
          note(os.str());
        } catch (const ConditionError& e) {
          note(e.what());
        }
      }
      c.gate_name = "d1_finite";
      c.gate_value = c.d1;
      if (std::isfinite(c.d1)) {
        c.bracket = bracket_CH(c.d1, p, q);
        c.front_constant = c.bracket->second;
      } else {
        c.front_constant = kInf;
      }
      break;
    }
    case Theorem::radial_hardy:
      c.gate_name = "p_below_Q";
      c.gate_value = p / Q;
      c.front_constant = p < Q ? p / (Q - p) : kInf;
      break;
    case Theorem::frac_hardy: {
      const SupResult d = d1_frac(frac_weight(sc.weights.a, p, geom), p, s, geom);
      c.d1 = d.value;
      note(d.diagnostic);
      c.gate_name = "frac_gate";
      c.gate_value = gate_frac(c.d1, p);
      c.front_constant = front_constant_frac(p, s, Q, geom.c_tri(), geom.sphere_measure(), c.d1);
      break;
    }
    case Theorem::uncertainty: {
      try {
        c.d1 = d1_frac_closed(p, s, Q);
      } catch (const ConditionError& e) {
        c.d1 = kInf;
        note(e.what());
      }
      c.gate_name = "frac_gate";
      c.gate_value = gate_frac(c.d1, p);
      c.front_constant = front_constant_frac(p, s, Q, geom.c_tri(), geom.sphere_measure(), c.d1);
      break;
    }
    case Theorem::hardy_sobolev:
    case Theorem::log_hs:
    case Theorem::nash: {
      const SupResult d = d1_hs(sc.weights.v, sc.weights.z, p, q, s, geom);
      c.d1 = d.value;
      note(d.diagnostic);
      const double front = front_constant_hs(p, q, s, Q, geom.c_tri(), geom.sphere_measure(), c.d1);
      if (sc.theorem == Theorem::hardy_sobolev) {
        c.gate_name = "hs_gate";
        c.gate_value = gate_hs(c.d1, q);
        c.front_constant = front;
      } else if (sc.theorem == Theorem::log_hs) {
        c.gate_name = "log_hs_gate";
        c.gate_value = gate_log_hs(c.d1, p, q);
        c.front_constant = std::pow(front, p);
      } else {
        c.gate_name = "nash_gate";
        c.gate_value = gate_nash(c.d1, q);
        c.front_constant = front * front;
      }
      break;
    }
    case Theorem::log_holder:
      c.gate_name = "p_below_q";
      c.gate_value = p / q;
      c.front_constant = 1.0;
      break;
  }
  return c;
}

std::vector<GateResult> check_admissibility(const Scenario& sc) { return check_admissibility(sc, compute_constants(sc)); }

std::vector<GateResult> check_admissibility(const Scenario& sc, const ConstantsBundle& c) {
  const Geometry geom = sc.geometry();
  const double p = sc.p;
  const double q = sc.q;
  const double s = sc.s;
  const double Q = geom.Q();
  std::vector<GateResult> g;
  const double d1 = c.d1;
  switch (sc.theorem) {
    case Theorem::integral_hardy:
      g.push_back(gate("1<p<=q", p / q, p > 1.0 && p <= q));
      g.push_back(gate("d1_finite", d1, std::isfinite(d1), c.diagnostic));
      break;
    case Theorem::radial_hardy:
      g.push_back(gate("1<p<Q", p / Q, p > 1.0 && p < Q));
      break;
    case Theorem::frac_hardy:
      g.push_back(gate("frac_gate", gate_frac(d1, p), gate_frac(d1, p) < 1.0, c.diagnostic));
      break;
    case Theorem::uncertainty:
      g.push_back(gate("Q<sp", Q / (s * p), s * p > Q));
      g.push_back(gate("frac_gate", gate_frac(d1, p), gate_frac(d1, p) < 1.0, c.diagnostic));
      break;
    case Theorem::hardy_sobolev:
      g.push_back(gate("p<=q", p / q, p <= q));
      g.push_back(gate("hs_gate", gate_hs(d1, q), gate_hs(d1, q) < 1.0, c.diagnostic));
      break;
    case Theorem::log_holder:
      g.push_back(gate("1<p<q", p / q, p > 1.0 && p < q));
      break;
    case Theorem::log_hs:
      g.push_back(gate("1<p<q", p / q, p > 1.0 && p < q));
      g.push_back(gate("log_hs_gate", gate_log_hs(d1, p, q), gate_log_hs(d1, p, q) < 1.0, c.diagnostic));
      g.push_back(gate("hs_gate", gate_hs(d1, q), gate_hs(d1, q) < 1.0, "required by the chained Hardy-Sobolev step"));
      break;
    case Theorem::nash:
      g.push_back(gate("p=2", p, p == 2.0));
      g.push_back(gate("q>2", q, q > 2.0));
      g.push_back(gate("s>-Q/2", s, s > -Q / 2.0));
      g.push_back(gate("nash_gate", gate_nash(d1, q), gate_nash(d1, q) < 1.0, c.diagnostic));
      g.push_back(gate("hs_gate", gate_hs(d1, q), gate_hs(d1, q) < 1.0, "required by the chained Hardy-Sobolev step"));
      break;
  }
  return g;
}

namespace {

using Body = std::function<void(const TestFunction&, std::vector<Record>&, std::int64_t&)>;

double front(const Scenario& sc, const ConstantsBundle& c) {
  return sc.front_override ? *sc.front_override : c.front_constant;
}

Record error_record(const std::string& id, const std::string& msg) {
  Record r;
  r.id = id;
  r.verdict = Verdict::error;
  r.message = msg;
  return r;
}

VerificationReport run(const Scenario& sc, const Body& body) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.scenario = sc;
  rep.constants = compute_constants(sc);
  rep.gates = check_admissibility(sc, rep.constants);
  const bool ok = rep.applicable();
  for (const auto& u : sc.corpus) {
    if (!ok) {
      Record r;
      r.id = u.id;
      r.verdict = Verdict::not_applicable;
      r.front_constant = rep.constants.front_constant;
      r.message = "hypothesis gate failed";
      rep.results.push_back(r);
      continue;
    }
    std::vector<Record> recs;
    try {
      body(u, recs, rep.evaluations);
    } catch (const NumericError& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " (partial value " << e.partial_value() << ", error " << e.partial_error() << ")";
      recs.push_back(error_record(u.id, os.str()));
    } catch (const Error& e) {
      recs.push_back(error_record(u.id, e.what()));
    }
    for (auto& r : recs) rep.results.push_back(std::move(r));
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

VerificationReport verify_integral_hardy(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  const PowerExpr g = sc.weights.g_expr();
  const PowerExpr h = sc.weights.h_expr();
  return run(sc, [&](const TestFunction& f, std::vector<Record>& out, std::int64_t& ev) {
    const IntegralResult l = integral_hardy_lhs(f, g, sc.q, sc.scheme, geom);
    const IntegralResult r = weighted_norm(f, h, sc.p, sc.scheme, geom);
    ev += l.evaluations + r.evaluations;
    out.push_back(make_record(f.id, l.value, l.error_bound, r.value, r.error_bound, C));
  });
}

TestFunction near_extremal(double Q, double p, double eps, double ratio, const QuadratureScheme& scheme,
                           const Geometry& geom) {
  TestFunction t;
  t.id = "extremal";
  t.profile = Profile::truncated_power;
  t.r0 = 1.0;
  t.R = ratio;
  t.kappa = -(Q - p) / p + eps;
  const double L = std::log(ratio);
  auto quotient = [&](double ramp) {
    TestFunction c = t;
    c.ramp = ramp;
    return radial_quotient_norm(c, p, scheme, geom).value / radial_derivative_norm(c, p, scheme, geom).value;
  };
  // golden-section search for the ramp width in [0.02 L, 0.5 L]
  double a = 0.02 * L;
  double b = 0.5 * L;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = quotient(x1);
  double f2 = quotient(x2);
  for (int it = 0; it < 30; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = quotient(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = quotient(x1);
    }
  }
  t.ramp = f1 > f2 ? x1 : x2;
  return t;
}

VerificationReport verify_radial_hardy(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  auto check = [&](const TestFunction& u, const std::string& id, std::vector<Record>& out, std::int64_t& ev) {
    const IntegralResult l = radial_quotient_norm(u, sc.p, sc.scheme, geom);
    const IntegralResult r = radial_derivative_norm(u, sc.p, sc.scheme, geom);
    ev += l.evaluations + r.evaluations;
    out.push_back(make_record(id, l.value, l.error_bound, r.value, r.error_bound, C));
  };
  VerificationReport rep = run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    check(u, u.id, out, ev);
  });
  if (!rep.applicable()) return rep;
  // near-extremal family: an empirical lower bound for the sharp constant
  for (double eps : sc.extremal.epsilons) {
    std::ostringstream id;
    id.precision(17);
    id << "extremal.eps=" << eps;
    try {
      const TestFunction u = near_extremal(geom.Q(), sc.p, eps, sc.extremal.ratio_R_r0, sc.scheme, geom);
      std::vector<Record> out;
      check(u, id.str(), out, rep.evaluations);
      rep.results.push_back(out.front());
    } catch (const Error& e) {
      rep.results.push_back(error_record(id.str(), e.what()));
    }
  }
  return rep;
}

VerificationReport verify_frac_hardy(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  const RadialLogWeight A = frac_weight(sc.weights.a, sc.p, geom);
  return run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    const IntegralResult l = weighted_lhs(u, A, sc.s, sc.p, sc.scheme, geom);
    const IntegralResult r = integrate_gagliardo(u, sc.p, sc.s, sc.weights.a, sc.scheme, geom);
    ev += l.evaluations + r.evaluations;
    const double e = 1.0 / sc.p;
    out.push_back(make_record(u.id, std::pow(l.value, e), power_error(l.value, l.error_bound, e),
                              std::pow(r.value, e), power_error(r.value, r.error_bound, e), C));
  });
}

VerificationReport verify_uncertainty(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  const double p = sc.p;
  const double s = sc.s;
  const double pc = conj(p);
  return run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    const IntegralResult l2 = power_moments(u, {}, 1.0, 0.0, 2.0, sc.scheme, geom).moment;
    const IntegralResult dual = power_moments(u, {}, 1.0, -s, pc, sc.scheme, geom).moment;  // int |x|^(sp') |u|^p'
    const IntegralResult hardy = weighted_lhs(u, {}, s, p, sc.scheme, geom);               // int |x|^(-sp) |u|^p
    const IntegralResult semi = integrate_gagliardo(u, p, s, PowerExpr::constant(1.0), sc.scheme, geom);
    ev += l2.evaluations + dual.evaluations + hardy.evaluations + semi.evaluations;
    const double tail = std::pow(dual.value, 1.0 / pc);
    const double rhs = std::pow(semi.value, 1.0 / p) * tail;
    const double rhs_err = rhs * rel_power_error({{semi, 1.0 / p}, {dual, 1.0 / pc}});
    out.push_back(make_record(u.id, l2.value, l2.error_bound, rhs, rhs_err, C));
    const double h = std::pow(hardy.value, 1.0 / p) * tail;
    const double h_err = h * rel_power_error({{hardy, 1.0 / p}, {dual, 1.0 / pc}});
    out.push_back(make_record(u.id + ".holder", l2.value, l2.error_bound, h, h_err, 1.0));
  });
}

VerificationReport verify_hs(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  const RadialLogWeight A = hs_weight(sc.weights.v, sc.weights.z, sc.p, sc.q, geom);
  return run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    const IntegralResult l = weighted_lhs(u, A, sc.s, sc.q, sc.scheme, geom);
    const IntegralResult r = nested_hs_rhs(u, sc.weights.z, sc.weights.v, sc.p, sc.q, sc.s, sc.scheme, geom);
    ev += l.evaluations + r.evaluations;
    const double e = 1.0 / sc.q;
    out.push_back(make_record(u.id, std::pow(l.value, e), power_error(l.value, l.error_bound, e), r.value,
                              r.error_bound, C));
  });
}

namespace {

// (q/(q-p)) log(Iq^(p/q) / Ip) with its error
std::pair<double, double> holder_bound(const IntegralResult& Ip, const IntegralResult& Iq, double p, double q) {
  const double k = q / (q - p);
  const double v = k * ((p / q) * std::log(Iq.value) - std::log(Ip.value));
  const double e = k * ((p / q) * Iq.error_bound / Iq.value + Ip.error_bound / Ip.value);
  return {v, e};
}

}  // namespace

VerificationReport verify_log_holder(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  return run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    const Entropy e = entropy_term(u, {}, 0.0, sc.p, sc.q, sc.scheme, geom);
    ev += 2 * e.norm_p.evaluations + e.norm_q.evaluations;
    const auto [rhs, rhs_err] = holder_bound(e.norm_p, e.norm_q, sc.p, sc.q);
    out.push_back(make_record(u.id, e.value, e.error, rhs, rhs_err, 1.0, true));
  });
}

VerificationReport verify_log_hs(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  const double p = sc.p;
  const double q = sc.q;
  const RadialLogWeight A = hs_weight(sc.weights.v, sc.weights.z, p, q, geom);
  return run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    const Entropy e = entropy_term(u, A, sc.s, p, q, sc.scheme, geom);
    const IntegralResult N = nested_hs_rhs(u, sc.weights.z, sc.weights.v, p, q, sc.s, sc.scheme, geom);
    ev += 2 * e.norm_p.evaluations + e.norm_q.evaluations + N.evaluations;
    const auto [lemma, lemma_err] = holder_bound(e.norm_p, e.norm_q, p, q);
    out.push_back(make_record(u.id + ".lemma", e.value, e.error, lemma, lemma_err, 1.0, true));
    const double k = q / (q - p);
    const double rhs = k * (std::log(C) + p * std::log(N.value) - std::log(e.norm_p.value));
    const double rhs_err = k * (p * N.error_bound / N.value + e.norm_p.error_bound / e.norm_p.value);
    Record r = make_record(u.id, e.value, e.error, rhs, rhs_err, 1.0, true);
    r.front_constant = C;
    out.push_back(r);
  });
}

VerificationReport verify_nash(const Scenario& sc) {
  const Geometry geom = sc.geometry();
  const ConstantsBundle c = compute_constants(sc);
  const double C = front(sc, c);
  const double q = sc.q;
  const RadialLogWeight A = hs_weight(sc.weights.v, sc.weights.z, 2.0, q, geom);
  return run(sc, [&](const TestFunction& u, std::vector<Record>& out, std::int64_t& ev) {
    const Moments m2 = power_moments(u, A, q, sc.s, 2.0, sc.scheme, geom);
    const IntegralResult I1 = power_moments(u, A, q, sc.s, 1.0, sc.scheme, geom).moment;
    const IntegralResult N = nested_hs_rhs(u, sc.weights.z, sc.weights.v, 2.0, q, sc.s, sc.scheme, geom);
    const IntegralResult& I2 = m2.moment;
    ev += 2 * I2.evaluations + I1.evaluations + N.evaluations;
    const double el = 2.0 - 2.0 / q;           // |g|_2^(4-4/q) = I2^(2-2/q)
    const double e1 = 2.0 * (q - 2.0) / q;     // |g|_1^(2(q-2)/q)
    const double lhs = std::pow(I2.value, el);
    const double rhs = N.value * N.value * std::pow(I1.value, e1);
    out.push_back(make_record(u.id, lhs, lhs * rel_power_error({{I2, el}}), rhs,
                              rhs * rel_power_error({{N, 2.0}, {I1, e1}}), C));
    // Jensen step: log(|g|_2^2 / |g|_1) <= int (g^2 / |g|_2^2) log g
    const double jl = std::log(I2.value / I1.value);
    const double jl_err = I2.error_bound / I2.value + I1.error_bound / I1.value;
    const double jr = m2.log_moment.value / I2.value;
    const double jr_err = m2.log_moment.error_bound / I2.value + std::abs(jr) * I2.error_bound / I2.value;
    out.push_back(make_record(u.id + ".jensen", jl, jl_err, jr, jr_err, 1.0, true));
  });
}

VerificationReport verify(const Scenario& sc) {
  switch (sc.theorem) {
    case Theorem::integral_hardy: return verify_integral_hardy(sc);
    case Theorem::radial_hardy: return verify_radial_hardy(sc);
    case Theorem::frac_hardy: return verify_frac_hardy(sc);
    case Theorem::uncertainty: return verify_uncertainty(sc);
    case Theorem::hardy_sobolev: return verify_hs(sc);
    case Theorem::log_holder: return verify_log_holder(sc);
    case Theorem::log_hs: return verify_log_hs(sc);
    case Theorem::nash: return verify_nash(sc);
  }
  throw ConfigError("unknown theorem");
}

int exit_code(const VerificationReport& r) {
  bool violation = false;
  bool error = false;
  bool inconclusive = false;
  for (const auto& rec : r.results) {
    violation |= rec.verdict == Verdict::violation;
    error |= rec.verdict == Verdict::error;
    inconclusive |= rec.verdict == Verdict::inconclusive;
  }
  if (violation) return 2;
  if (error) return 1;
  if (inconclusive) return 3;
  return 0;
}

}  // namespace fhardy
