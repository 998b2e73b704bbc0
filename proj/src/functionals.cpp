#include "fhardy/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fhardy/angular.hpp"
#include "fhardy/error.hpp"
#include "fhardy/gagliardo.hpp"
#include "fhardy/radial.hpp"
#include "fhardy/rules.hpp"

namespace fhardy {

double power_error(double value, double error, double e) {
  if (error == 0.0) return 0.0;
  if (value <= 0.0) return std::pow(error, e);
  return std::abs(e) * std::pow(value, e - 1.0) * error;
}

double log_ball_average(const PowerExpr& f, double r, const Geometry& geom) {
  if (!f.is_radial()) throw ConfigError("ball average of a non-radial expression");
  const double Q = geom.Q();
  const double k = f.power_x();
  if (f.gauss_x() == 0.0) {
    if (!(Q + k > 0.0))
      throw DomainError("ball average diverges at the origin (power " + std::to_string(k) + ")");
    return std::log(f.coef()) + std::log(Q / (Q + k)) + k * std::log(r);
  }
  const LogDensity dens = [&f, Q](double t) { return f.log_eval(t) + (Q - 1.0) * std::log(t); };
  const LogValue v = log_integral_below(dens, r);
  if (!v.finite) throw DomainError("ball average at radius " + std::to_string(r) + ": " + v.diagnostic);
  return v.log + std::log(Q) - Q * std::log(r);
}

RadialLogWeight frac_weight(const PowerExpr& a, double p, const Geometry& geom) {
  if (!(p > 1.0)) throw ConfigError("p>1 required");
  if (a.depends_on_diff())
    throw ConfigError("a(x,y) depending on |y^-1 x| gives a non-radial A; only |x|, |y| dependence is supported here");
  const double pc = p / (p - 1.0);
  const double lc = std::log(a.coef());
  const PowerExpr xf = a.x_factor();
  // (1-p)(1-p') = 1, so the |x| factor of a passes through unchanged
  const PowerExpr yf = a.y_factor().swapped().pow(1.0 - pc);
  const bool y_free = yf.is_constant();
  return [lc, xf, yf, y_free, p, geom](double r) {
    double l = lc + xf.log_eval(r);
    if (!y_free) l += (1.0 - p) * log_ball_average(yf, r, geom);
    return l;
  };
}

double weight_A_frac(const PowerExpr& a, const Point& x, double p, const QuadratureScheme& scheme,
                     const Geometry& geom) {
  const double nx = geom.norm(x);
  if (!(nx > 0.0)) throw DomainError("weight A is undefined at the origin");
  if (!a.depends_on_diff()) return std::exp(frac_weight(a, p, geom)(nx));
  const double pc = p / (p - 1.0);
  auto f = [&](const Point& y) {
    const double d = geom.norm(geom.mul(inv(geom.group(), y), x));
    const double ny = geom.norm(y);
    if (d == 0.0 || ny == 0.0) return 0.0;
    return std::exp((1.0 - pc) * a.log_eval(nx, ny, d));
  };
  const IntegralResult avg = ball_integral(f, nx, scheme, geom);
  const double m = avg.value / geom.ball_volume(nx);
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("ball average of a^(1-p') vanishes or diverges at |x| = " + std::to_string(nx));
  return std::pow(m, 1.0 - p);
}

double weight_C(const PowerExpr& v, double r, const Geometry& geom) {
  return ball_integral(v, r, geom).value;
}

RadialLogWeight hs_weight(const PowerExpr& v, const PowerExpr& z, double p, double q,
                          const Geometry& geom) {
  if (!(p > 1.0)) throw ConfigError("p>1 required");
  if (!v.is_radial() || !z.is_radial()) throw ConfigError("v and z must depend on |x| only");
  const double pc = p / (p - 1.0);
  const PowerExpr w = (v.pow(p) * z.pow(-1.0)).pow(1.0 / (p - 1.0));
  return [w, v, q, pc, geom](double r) {
    return -(q / pc) * log_ball_average(w, r, geom) + q * log_ball_average(v, r, geom) + v.log_eval(r);
  };
}

double weight_A_hs(const PowerExpr& v, const PowerExpr& z, const Point& x, double p, double q,
                   const Geometry& geom) {
  const double nx = geom.norm(x);
  if (!(nx > 0.0)) throw DomainError("weight A is undefined at the origin");
  return std::exp(hs_weight(v, z, p, q, geom)(nx));
}

namespace {

bool reduced_for(const TestFunction& u, const Geometry& geom) {
  return u.is_radial() && geom.rotation_symmetric();
}

}  // namespace

Moments power_moments(const TestFunction& u, const RadialLogWeight& log_A, double root, double s,
                      double k, const QuadratureScheme& scheme, const Geometry& geom) {
  Moments m;
  if (u.is_zero()) return m;
  auto logw = [&](double r, const Point& om, double& lw) {
    const double uv = u.value(geom, geom.dil(r, om), r);
    if (uv == 0.0) return false;
    lw = std::log(std::abs(uv)) - s * std::log(r);
    if (log_A) lw += log_A(r) / root;
    return true;
  };
  auto f = [&](double r, const Point& om) {
    double lw;
    return logw(r, om, lw) ? std::exp(k * lw) : 0.0;
  };
  auto g = [&](double r, const Point& om) {
    double lw;
    return logw(r, om, lw) ? std::exp(k * lw) * lw : 0.0;
  };
  const auto br = u.breakpoints();
  const bool red = reduced_for(u, geom);
  m.moment = integrate_annulus(f, u.r0, u.R, br, scheme, geom, red);
  m.log_moment = integrate_annulus(g, u.r0, u.R, br, scheme, geom, red);
  return m;
}

IntegralResult weighted_lhs(const TestFunction& u, const RadialLogWeight& log_A, double s, double p,
                            const QuadratureScheme& scheme, const Geometry& geom) {
  if (u.is_zero()) return {};
  auto f = [&](double r, const Point& om) {
    const double uv = u.value(geom, geom.dil(r, om), r);
    if (uv == 0.0) return 0.0;
    double l = p * (std::log(std::abs(uv)) - s * std::log(r));
    if (log_A) l += log_A(r);
    return std::exp(l);
  };
  return integrate_annulus(f, u.r0, u.R, u.breakpoints(), scheme, geom, reduced_for(u, geom));
}

IntegralResult nested_hs_rhs(const TestFunction& u, const PowerExpr& z, const PowerExpr& v, double p,
                             double q, double s, const QuadratureScheme& scheme, const Geometry& geom) {
  const IntegralResult n = nested_hs_integral(u, z, v, p, q, s, scheme, geom);
  return {std::pow(n.value, 1.0 / q), power_error(n.value, n.error_bound, 1.0 / q), n.evaluations};
}

Entropy entropy_term(const TestFunction& u, const RadialLogWeight& log_A, double s, double p, double q,
                     const QuadratureScheme& scheme, const Geometry& geom) {
  if (!(p > 0.0)) throw ConfigError("entropy term needs p > 0");
  Entropy e;
  const Moments mp = power_moments(u, log_A, q, s, p, scheme, geom);
  const double I = mp.moment.value;
  if (!(I > 0.0)) throw DomainError("entropy term: |w|_p vanishes");
  const double L = mp.log_moment.value;
  e.norm_p = mp.moment;
  e.norm_q = power_moments(u, log_A, q, s, q, scheme, geom).moment;
  e.value = p * L / I - std::log(I);
  e.error = p * mp.log_moment.error_bound / I + (p * std::abs(L) / I + 1.0) * mp.moment.error_bound / I;
  return e;
}

namespace {

// |S| int_{r0}^{R} f(r) r^(Q-1) dr on the profile's panels, two levels
IntegralResult radial_1d(const std::function<double(double)>& f, const TestFunction& u,
                         const QuadratureScheme& scheme, const Geometry& geom) {
  const double Q = geom.Q();
  const double lo = u.r0 > 0.0 ? u.r0 : 1e-12 * u.R;
  double prev = 0.0;
  IntegralResult res;
  for (int level = 0; level <= 1; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    const double pd = std::max(8.0, sch.per_decade) * (level + 1);
    std::vector<double> br = radial_breaks(lo, u.R, pd, u.breakpoints());
    const auto kinks = u.breakpoints();
    for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
      const auto ub = uniform_breaks(kinks[i], kinks[i + 1], sch.radial_panels);
      br.insert(br.end(), ub.begin(), ub.end());
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double sum = 0.0;
    for (const auto& n : rule_from_breaks(br, std::max(16, sch.order))) sum += n.w * f(n.x) * std::pow(n.x, Q - 1.0);
    sum *= geom.sphere_measure();
    res.evaluations += static_cast<std::int64_t>(br.size()) * std::max(16, sch.order);
    if (level == 0) prev = sum;
    res.value = sum;
  }
  res.error_bound = std::abs(res.value - prev);
  return res;
}

IntegralResult rooted(const IntegralResult& r, double p) {
  return {std::pow(r.value, 1.0 / p), power_error(r.value, r.error_bound, 1.0 / p), r.evaluations};
}

}  // namespace

IntegralResult radial_derivative_norm(const TestFunction& u, double p, const QuadratureScheme& scheme,
                                      const Geometry& geom) {
  if (!u.is_radial()) throw ConfigError("radial derivative norm needs a radial function");
  if (u.is_zero()) return {};
  if (!u.is_lipschitz()) throw ConfigError("radial derivative of an indicator is not a function");
  return rooted(radial_1d([&](double r) { return std::pow(std::abs(u.radial_derivative(r)), p); }, u, scheme, geom), p);
}

IntegralResult radial_quotient_norm(const TestFunction& u, double p, const QuadratureScheme& scheme,
                                    const Geometry& geom) {
  if (!u.is_radial()) throw ConfigError("radial Hardy inequality needs a radial function");
  if (u.is_zero()) return {};
  return rooted(radial_1d([&](double r) { return std::pow(std::abs(u.radial(r)) / r, p); }, u, scheme, geom), p);
}

IntegralResult weighted_norm(const TestFunction& f, const PowerExpr& h, double p,
                             const QuadratureScheme& scheme, const Geometry& geom) {
  if (!h.is_radial()) throw ConfigError("h must depend on |x| only");
  if (f.is_zero()) return {};
  auto fn = [&](double r, const Point& om) {
    const double v = f.value(geom, geom.dil(r, om), r);
    return v == 0.0 ? 0.0 : std::exp(p * std::log(std::abs(v)) + h.log_eval(r));
  };
  return rooted(integrate_annulus(fn, f.r0, f.R, f.breakpoints(), scheme, geom, reduced_for(f, geom)), p);
}

IntegralResult integral_hardy_lhs(const TestFunction& f, const PowerExpr& g, double q,
                                  const QuadratureScheme& scheme, const Geometry& geom) {
  if (!g.is_radial()) throw ConfigError("g must depend on |x| only");
  if (f.is_zero()) return {};
  const double Q = geom.Q();
  const double sphere = geom.sphere_measure();
  const bool core = !(f.r0 > 0.0);
  const double lo = core ? 1e-12 * f.R : f.r0;
  const auto kinks = f.breakpoints();
  double prev = 0.0;
  double est = 0.0;
  double Flo = 0.0;
  std::int64_t evals = 0;
  double FR = 0.0;
  for (int level = 0; level <= 1; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    const int na = sch.angular_nodes(geom.dim());
    const AngularRule ang = reduced_for(f, geom) ? reduced_angular_rule(geom, na) : angular_rule(geom, na);
    // angular mass of |f| on the sphere of radius t, times t^(Q-1)
    auto mass = [&](double t) {
      double m = 0.0;
      for (std::size_t k = 0; k < ang.size(); ++k) m += ang.weight[k] * std::abs(f.value(geom, geom.dil(t, ang.omega[k]), t));
      evals += static_cast<std::int64_t>(ang.size());
      return m * std::pow(t, Q - 1.0);
    };
    std::vector<double> br = radial_breaks(lo, f.R, std::max(4.0, sch.per_decade), kinks);
    for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
      const auto ub = uniform_breaks(kinks[i], kinks[i + 1], sch.radial_panels);
      br.insert(br.end(), ub.begin(), ub.end());
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    const int order = sch.order;
    const Rule1D& gl = gauss_legendre(order);
    double F = core ? mass(lo) * lo / Q : 0.0;
    Flo = F;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      const double a = br[i];
      const double b = br[i + 1];
      for (const auto& n : gl) {
        const double r = 0.5 * (a + b) + 0.5 * (b - a) * n.x;
        double Fr = F;
        for (const auto& m : gl) {
          const double t = a + (r - a) * 0.5 * (1.0 + m.x);
          Fr += 0.5 * (r - a) * m.w * mass(t);
        }
        sum += 0.5 * (b - a) * n.w * std::pow(Fr, q) * g.eval(r) * sphere * std::pow(r, Q - 1.0);
      }
      for (const auto& m : gl) F += 0.5 * (b - a) * m.w * mass(0.5 * (a + b) + 0.5 * (b - a) * m.x);
    }
    if (level == 0) {
      prev = sum;
      continue;
    }
    est = sum;
    FR = F;
  }
  // beyond R the ball mass is constant
  const IntegralResult tail = complement_integral(g, f.R, geom);
  // below lo, F ~ F(lo) (r/lo)^Q
  double core_part = 0.0;
  if (core && Flo > 0.0) {
    const IntegralResult c = ball_integral(g * PowerExpr::power_of_x(q * Q), lo, geom);
    core_part = c.value * std::pow(Flo / std::pow(lo, Q), q);
  }
  const double total = est + std::pow(FR, q) * tail.value + core_part;
  const double err = std::abs(est - prev) + std::pow(FR, q) * tail.error_bound + std::abs(core_part);
  return rooted({total, err, evals}, q);
}

}  // namespace fhardy
