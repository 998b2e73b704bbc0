#include "fhardy/constants.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fhardy/error.hpp"

namespace fhardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conj(double p) { return p / (p - 1.0); }

}  // namespace

SupResult radial_sup(const LogDensity& g, const LogDensity& h, double eg, double eh, double scale) {
  const RadialCumulative G(g, scale);
  const RadialCumulative H(h, scale);
  SupResult out;
  std::string diag;
  auto phi = [&](double lr) {
    const double r = std::exp(lr);
    const LogValue a = G.above(r);
    const LogValue b = H.below(r);
    if (!a.finite || !b.finite) {
      if (diag.empty()) diag = !a.finite ? a.diagnostic : b.diagnostic;
      return kInf;
    }
    if (a.log == kNegInf || b.log == kNegInf) return kNegInf;
    return eg * a.log + eh * b.log;
  };
  const int n = 60;
  const double l0 = std::log(scale * 1e-4);
  const double l1 = std::log(scale * 1e4);
  std::vector<double> lr(n);
  std::vector<double> val(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    lr[static_cast<std::size_t>(i)] = l0 + (l1 - l0) * i / (n - 1);
    val[static_cast<std::size_t>(i)] = phi(lr[static_cast<std::size_t>(i)]);
    if (val[static_cast<std::size_t>(i)] > val[static_cast<std::size_t>(best)]) best = i;
  }
  const auto b = static_cast<std::size_t>(best);
  if (val[b] == kInf) {
    out.value = kInf;
    out.argmax = std::exp(lr[b]);
    out.diagnostic = "D1 is infinite: " + diag;
    return out;
  }
  if (val[b] == kNegInf) {
    out.value = 0.0;
    out.argmax = scale;
    return out;
  }
  // golden-section refinement in log r around the grid maximum
  double a = lr[b > 0 ? b - 1 : 0];
  double c = lr[std::min<std::size_t>(b + 1, n - 1)];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = c - gr * (c - a);
  double x2 = a + gr * (c - a);
  double f1 = phi(x1);
  double f2 = phi(x2);
  while (c - a > 1e-8) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (c - a);
      f2 = phi(x2);
    } else {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - gr * (c - a);
      f1 = phi(x1);
    }
  }
  double lbest = lr[b];
  double fbest = val[b];
  if (f1 > fbest) {
    fbest = f1;
    lbest = x1;
  }
  if (f2 > fbest) {
    fbest = f2;
    lbest = x2;
  }
  out.value = std::exp(fbest);
  out.argmax = std::exp(lbest);
  if (best == 0 || best == n - 1) {
    // flat products (power weights) peak everywhere; only a strict edge maximum is suspicious
    const double inner = best == 0 ? val[1] : val[static_cast<std::size_t>(n - 2)];
    if (val[b] - inner > 1e-9 * std::max(1.0, std::abs(val[b])))
      out.diagnostic = "supremum attained at the edge of the search range; value is a lower bound";
  }
  if (!diag.empty() && out.diagnostic.empty()) out.diagnostic = diag;
  return out;
}

SupResult d1_integral_hardy(const PowerExpr& g, const PowerExpr& h, double p, double q,
                            const Geometry& geom, double scale) {
  if (!(p > 1.0)) throw ConfigError("p>1 required");
  if (!g.is_radial() || !h.is_radial()) throw ConfigError("g and h must depend on |x| only");
  const double ls = std::log(geom.sphere_measure());
  const double Q = geom.Q();
  const double pc = conj(p);
  const LogDensity lg = [g, ls, Q](double t) { return ls + g.log_eval(t) + (Q - 1.0) * std::log(t); };
  const LogDensity lh = [h, ls, Q, pc](double t) {
    return ls + (1.0 - pc) * h.log_eval(t) + (Q - 1.0) * std::log(t);
  };
  return radial_sup(lg, lh, 1.0 / q, 1.0 / pc, scale);
}

double d1_power_weights(double alpha, double beta, double p, double q, double Q, double sphere) {
  if (!(p > 1.0)) throw ConditionError("p>1 required");
  if (!(beta + Q < 0.0)) throw ConditionError("power weights need beta + Q < 0");
  if (!(alpha < Q * (p - 1.0))) throw ConditionError("power weights need alpha < Q (p - 1)");
  const double lhs = q * (alpha + Q) - p * (beta + Q);
  if (std::abs(lhs - p * q * Q) > 1e-12 * std::max(1.0, p * q * Q))
    throw ConditionError("power weights need q (alpha + Q) - p (beta + Q) = p q Q");
  const double pc = conj(p);
  return std::pow(sphere, 1.0 / q + 1.0 / pc) /
         (std::pow(std::abs(beta + Q), 1.0 / q) * std::pow(alpha * (1.0 - pc) + Q, 1.0 / pc));
}

SupResult d1_frac(const RadialLogWeight& log_A, double p, double s, const Geometry& geom, double scale) {
  if (!(p > 1.0)) throw ConfigError("p>1 required");
  const double sphere = geom.sphere_measure();
  const double ls = std::log(sphere);
  const double Q = geom.Q();
  const double pc = conj(p);
  const double sp = s * p;
  const LogDensity lg = [log_A, ls, Q, p, sp](double t) {
    const double lt = std::log(t);
    const double lball = ls + Q * lt - std::log(Q);
    return log_A(t) - p * lball - sp * lt + ls + (Q - 1.0) * lt;
  };
  const LogDensity lh = [log_A, ls, Q, pc, sp](double t) {
    const double lt = std::log(t);
    return (1.0 - pc) * (log_A(t) - sp * lt) + ls + (Q - 1.0) * lt;
  };
  return radial_sup(lg, lh, 1.0 / p, 1.0 / pc, scale);
}

double d1_frac_closed(double p, double s, double Q) {
  if (!(p > 1.0)) throw ConditionError("p>1 required");
  const double pc = conj(p);
  const double den = s * p + Q * p - Q;
  if (!(den > 0.0)) throw ConditionError("closed form needs sp + Qp - Q > 0");
  if (!(s * pc + Q > 0.0)) throw ConditionError("closed form needs sp' + Q > 0");
  return Q * std::pow(p - 1.0, 1.0 / pc) / den;
}

SupResult d1_hs(const PowerExpr& v, const PowerExpr& z, double p, double q, double s,
                const Geometry& geom, double scale) {
  if (!(q > 1.0)) throw ConfigError("q>1 required");
  const RadialLogWeight logA = hs_weight(v, z, p, q, geom);
  const double ls = std::log(geom.sphere_measure());
  const double Q = geom.Q();
  const double qc = conj(q);
  const double sq = s * q;
  const LogDensity lg = [logA, v, ls, Q, q, sq, geom](double t) {
    const double lt = std::log(t);
    const double lC = ls + Q * lt - std::log(Q) + log_ball_average(v, t, geom);
    return logA(t) - q * lC - sq * lt + ls + (Q - 1.0) * lt;
  };
  const LogDensity lh = [logA, v, ls, Q, q, qc, sq](double t) {
    const double lt = std::log(t);
    return (1.0 - qc) * (logA(t) - q * v.log_eval(t) - sq * lt) + ls + (Q - 1.0) * lt;
  };
  return radial_sup(lg, lh, 1.0 / q, 1.0 / qc, scale);
}

double gate_frac(double d1, double p) {
  const double pc = conj(p);
  return d1 * std::pow(pc, 1.0 / pc) * std::pow(p, 1.0 / p);
}

double gate_hs(double d1, double q) { return gate_frac(d1, q); }

double gate_log_hs(double d1, double p, double q) {
  const double pc = conj(p);
  return d1 * std::pow(pc, 1.0 / pc) * std::pow(p, 1.0 / q);
}

double gate_nash(double d1, double q) { return std::pow(2.0, 0.5 + 1.0 / q) * d1; }

double front_constant_frac(double p, double s, double Q, double c_tri, double sphere, double d1) {
  const double g = gate_frac(d1, p);
  if (!(g < 1.0)) return kInf;
  return std::pow(std::pow(2.0 * c_tri, -Q - s * p) * sphere / Q, -1.0 / p) / (1.0 - g);
}

double front_constant_hs(double p, double q, double s, double Q, double c_tri, double sphere, double d1) {
  const double g = gate_hs(d1, q);
  if (!(g < 1.0)) return kInf;
  return std::pow(2.0 * c_tri, (Q + s * p) / p) * std::pow(sphere / Q, -1.0 / p) / (1.0 - g);
}

std::pair<double, double> bracket_CH(double d1, double p, double q) {
  const double pc = conj(p);
  return {d1, d1 * std::pow(pc, 1.0 / pc) * std::pow(p, 1.0 / q)};
}

}  // namespace fhardy
