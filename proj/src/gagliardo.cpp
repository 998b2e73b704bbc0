#include "fhardy/gagliardo.hpp"

#include <algorithm>
#include <cmath>

#include "fhardy/angular.hpp"
#include "fhardy/error.hpp"
#include "fhardy/parallel.hpp"
#include "fhardy/radial.hpp"
#include "fhardy/rules.hpp"

namespace fhardy {

namespace {

inline double powp(double d, double p) {
  if (p == 2.0) return d * d;
  if (p == 1.0) return d;
  return std::pow(d, p);
}

struct Kernel {
  const TestFunction& u;
  const Geometry& geom;
  double p;
  double s;
  double e;     // outer exponent q/p
  PowerExpr a;  // weight in (|x|, |y|, |y^-1 x|)
  PowerExpr v;  // outer radial weight
  double lip;
};

struct JValue {
  double J = 0.0;
  double core_err = 0.0;
  double tail_err = 0.0;
  std::int64_t evals = 0;
};

struct XNode {
  Point x;
  double w;
  double up;  // |u(x)|^p
  double nx;
};

struct Contribution {
  double value = 0.0;
  double core_err = 0.0;
  double tail_err = 0.0;
  std::int64_t evals = 0;
};

class LevelEval {
 public:
  LevelEval(const Kernel& k, const QuadratureScheme& sch)
      : k_(k), sch_(sch), g_(k.geom.group()), sp_(k.s * k.p), Q_(k.geom.Q()),
        ang_(angular_rule(k.geom, sch.angular_nodes(k.geom.dim()))) {
    a_const_ = k_.a.is_constant();
    a_coef_ = k_.a.coef();
    build_ray_rule();
    build_x_nodes();
  }

  Contribution run() const;

 private:
  double weight(double nx, double ny, double nd) const {
    return a_const_ ? a_coef_ : std::exp(k_.a.log_eval(nx, ny, nd));
  }

  void build_ray_rule() {
    const auto& u = k_.u;
    // the core bound scales like rmin^(p-sp); keep it near 1e-3 of the scale-one
    // contribution, without going below 1e-10 where increments lose precision
    const double tight = std::pow(10.0, -3.0 / (k_.p - sp_));
    rmin_ = u.r0 * std::max(1e-10, std::min(sch_.r_min_factor, tight));
    rho0_ = std::max(std::min(0.25 * u.feature_scale(), 0.5 * u.r0), 10.0 * rmin_);
    h_ = (u.R - u.r0) / sch_.radial_panels;
    near_breaks_ = geometric_breaks(rmin_, rho0_, sch_.per_decade);
  }

  void build_x_nodes() {
    const auto& u = k_.u;
    std::vector<double> br = uniform_breaks(u.r0, u.R, sch_.radial_panels);
    for (double b : u.breakpoints()) br.push_back(b);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    const Rule1D rr = rule_from_breaks(br, sch_.order);
    for (const auto& n : rr) {
      for (std::size_t k = 0; k < ang_.size(); ++k) {
        const Point x = k_.geom.dil(n.x, ang_.omega[k]);
        const double ux = u.value(k_.geom, x, n.x);
        if (ux == 0.0) continue;
        xs_.push_back({x, n.w * ang_.weight[k] * std::pow(n.x, Q_ - 1.0), powp(std::abs(ux), k_.p), n.x});
      }
    }
  }

  Rule1D ray_rule(const Point& y, double ny) const {
    const auto& u = k_.u;
    const double rcut = k_.geom.c_tri() * (u.R + ny);
    std::vector<double> br = near_breaks_;
    const int panels = std::max(1, static_cast<int>(std::ceil((rcut - rho0_) / h_)));
    for (int i = 1; i <= panels; ++i) br.push_back(rho0_ + (rcut - rho0_) * i / panels);
    if (g_.dim == 1) {
      const double nu = g_.nu[0];
      for (double b : u.breakpoints()) {
        const double bn = std::pow(b, nu);
        for (double sg : {-1.0, 1.0}) {
          const double r = std::pow(std::abs(sg * bn - y[0]), 1.0 / nu);
          if (r > rmin_ && r < rcut) br.push_back(r);
        }
      }
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return rule_from_breaks(br, sch_.order);
  }

  // x = y.w with w in polar coordinates about the identity
  JValue near(const Point& y) const {
    const auto& u = k_.u;
    const auto& geom = k_.geom;
    JValue out;
    const double ny = geom.norm(y);
    const double uy = u.value(geom, y, ny);
    const double rcut = geom.c_tri() * (u.R + ny);
    const Rule1D rr = ray_rule(y, ny);
    std::vector<double> kw(rr.size());
    for (std::size_t j = 0; j < rr.size(); ++j) kw[j] = rr[j].w * std::pow(rr[j].x, -1.0 - sp_);

    const bool tail_per_ray = uy != 0.0 && k_.a.depends_on_x();
    Rule1D far_rule;
    const double rfar = std::max(sch_.r_max_factor * u.R, 10.0 * rcut);
    if (tail_per_ray) far_rule = rule_from_breaks(geometric_breaks(rcut, rfar, sch_.per_decade), sch_.order);

    double core_val = 0.0;
    double amax = 0.0;
    bool core_active = uy != 0.0;
    const double upy = powp(std::abs(uy), k_.p);
    for (std::size_t k = 0; k < ang_.size(); ++k) {
      const Point& om = ang_.omega[k];
      double acc = 0.0;
      for (std::size_t j = 0; j < rr.size(); ++j) {
        const double r = rr[j].x;
        const Point x = mul(g_, y, geom.dil(r, om));
        const double nx = geom.norm(x);
        const double d = std::abs(u.value(geom, x, nx) - uy);
        if (d == 0.0) continue;
        acc += kw[j] * powp(d, k_.p) * weight(nx, ny, r);
      }
      out.evals += static_cast<std::int64_t>(rr.size());
      // r < rmin: leading-order Taylor estimate
      {
        const Point x = mul(g_, y, geom.dil(rmin_, om));
        const double nx = geom.norm(x);
        const double d = std::abs(u.value(geom, x, nx) - uy);
        const double a = weight(nx, ny, rmin_);
        amax = std::max(amax, a);
        if (d != 0.0) {
          core_active = true;
          core_val += ang_.weight[k] * powp(d, k_.p) * a * std::pow(rmin_, -sp_) / (k_.p - sp_);
        }
      }
      if (tail_per_ray) {
        double t = 0.0;
        for (const auto& n : far_rule) {
          const Point x = mul(g_, y, geom.dil(n.x, om));
          t += n.w * std::pow(n.x, -1.0 - sp_) * upy * weight(geom.norm(x), ny, n.x);
        }
        out.evals += static_cast<std::int64_t>(far_rule.size());
        auto g = [&](double r) {
          const Point x = mul(g_, y, geom.dil(r, om));
          return upy * weight(geom.norm(x), ny, r) * std::pow(r, -1.0 - sp_);
        };
        const double g1 = g(rfar);
        const double g0 = g(rfar / 10.0);
        const double kk = std::log10(g1 / g0);
        if (!(kk < -1.0)) throw ConfigError("divergent seminorm: kernel tail is not integrable");
        const double tail = g1 * rfar / (-kk - 1.0);
        acc += t + tail;
        out.tail_err += ang_.weight[k] * tail;
      }
      out.J += ang_.weight[k] * acc;
    }
    out.J += core_val;
    if (core_active) {
      const double step = euclid_step_bound(g_, y, rmin_) / rmin_;
      out.core_err = k_.geom.sphere_measure() * powp(k_.lip * step, k_.p) * amax *
                     std::pow(rmin_, k_.p - sp_) / (k_.p - sp_);
    }
    if (uy != 0.0 && !tail_per_ray) {
      const PowerExpr& a = k_.a;
      const double sp = sp_;
      const LogDensity lf = [&a, ny, sp](double r) { return a.log_eval(1.0, ny, r) - (1.0 + sp) * std::log(r); };
      const LogValue lv = log_integral_above(lf, rcut, 12.0);
      if (!lv.finite) throw ConfigError("divergent seminorm: kernel tail is not integrable");
      const double t = upy * k_.geom.sphere_measure() * lv.value();
      out.J += t;
      out.tail_err += t * lv.rel_error;
    }
    return out;
  }

  // polar quadrature over the support of u
  JValue far(const Point& y) const {
    JValue out;
    const double ny = k_.geom.norm(y);
    const Point yi = inv(g_, y);
    const double ex = -Q_ - sp_;
    for (const auto& n : xs_) {
      const double d = k_.geom.norm(mul(g_, yi, n.x));
      out.J += n.w * n.up * weight(n.nx, ny, d) * std::pow(d, ex);
    }
    out.evals = static_cast<std::int64_t>(xs_.size());
    return out;
  }

  const Kernel& k_;
  const QuadratureScheme& sch_;
  const GroupSpec& g_;
  double sp_;
  double Q_;
  AngularRule ang_;
  bool a_const_ = false;
  double a_coef_ = 1.0;
  double rmin_ = 0.0;
  double rho0_ = 0.0;
  double h_ = 0.0;
  std::vector<double> near_breaks_;
  std::vector<XNode> xs_;
};

struct YNode {
  double r;
  double w;
  bool near;
};

Contribution LevelEval::run() const {
  const auto& u = k_.u;
  const auto& geom = k_.geom;
  const double r0 = u.r0;
  const double R = u.R;
  const double C = geom.c_tri();
  const int np = sch_.radial_panels;
  const int order = sch_.order;
  const double grade = 1e-4;

  std::vector<YNode> ys;
  auto add = [&](const std::vector<double>& br, bool near) {
    for (const auto& n : rule_from_breaks(br, order)) ys.push_back({n.x, n.w, near});
  };
  add(uniform_breaks(0.0, 0.5 * r0, std::max(2, np / 4)), false);
  add(graded_breaks(0.5 * r0, r0, false, true, grade, std::max(2, np / 2)), true);
  {
    std::vector<double> br = graded_breaks(r0, R, true, true, grade, np);
    for (double b : u.breakpoints()) br.push_back(b);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    add(br, true);
  }
  const double mid = 2.0 * C * R;
  const double yfar = sch_.r_max_factor * R;
  add(graded_breaks(R, mid, true, false, grade, std::max(2, np / 2)), true);
  add(geometric_breaks(mid, yfar, sch_.per_decade), false);

  const bool reduced = geom.rotation_symmetric() && u.is_radial();
  const AngularRule outer = reduced ? reduced_angular_rule(geom, sch_.angular_nodes(geom.dim())) : angular_rule(geom, sch_.angular_nodes(geom.dim()));
  const auto nang = static_cast<std::int64_t>(outer.size());
  const auto n = static_cast<std::int64_t>(ys.size()) * nang;

  const double e = k_.e;
  const auto parts = map_nodes<Contribution>(n, sch_.exec, [&](std::int64_t idx) {
    const YNode& yn = ys[static_cast<std::size_t>(idx / nang)];
    const auto k = static_cast<std::size_t>(idx % nang);
    const Point y = geom.dil(yn.r, outer.omega[k]);
    const JValue j = yn.near ? near(y) : far(y);
    Contribution c;
    const double W = yn.w * outer.weight[k] * std::pow(yn.r, Q_ - 1.0) * std::exp(k_.v.log_eval(yn.r));
    if (j.J > 0.0) {
      c.value = W * std::pow(j.J, e);
      const double slope = W * e * std::pow(j.J, e - 1.0);
      c.core_err = slope * j.core_err;
      c.tail_err = slope * j.tail_err;
    }
    c.evals = j.evals;
    return c;
  });
  Contribution total;
  for (const auto& c : parts) {
    total.value += c.value;
    total.core_err += c.core_err;
    total.tail_err += c.tail_err;
    total.evals += c.evals;
  }
  // |y| beyond yfar: power-law extrapolation per direction
  for (std::size_t k = 0; k < outer.size(); ++k) {
    auto f = [&](double r) {
      const JValue j = far(geom.dil(r, outer.omega[k]));
      return std::pow(j.J, e) * std::exp(k_.v.log_eval(r)) * std::pow(r, Q_ - 1.0);
    };
    const double f1 = f(yfar);
    const double f0 = f(yfar / 10.0);
    total.evals += 2 * static_cast<std::int64_t>(xs_.size());
    if (f1 == 0.0) continue;
    const double kk = std::log10(f1 / f0);
    if (!(kk < -1.0)) throw NumericError("outer integral diverges at infinity", total.value);
    const double tail = outer.weight[k] * f1 * yfar / (-kk - 1.0);
    total.value += tail;
    total.tail_err += tail;
  }
  return total;
}

IntegralResult drive(const Kernel& k, const QuadratureScheme& scheme) {
  scheme.validate();
  Contribution prev;
  Contribution cur;
  std::int64_t evals = 0;
  double disc = 0.0;
  for (int level = 0; level <= scheme.max_level; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    cur = LevelEval(k, sch).run();
    evals += cur.evals;
    if (level > 0) {
      disc = std::abs(cur.value - prev.value);
      const double err = disc + cur.core_err + cur.tail_err;
      if (disc <= scheme.rel_tol * std::abs(cur.value)) return {cur.value, err, evals};
      if (evals > scheme.budget)
        throw NumericError("evaluation budget exhausted before reaching the tolerance", cur.value, err);
    }
    prev = cur;
  }
  throw NumericError("tolerance not reached at the finest refinement level", cur.value,
                     disc + cur.core_err + cur.tail_err);
}

void check_common(const TestFunction& u, double p, double s) {
  if (!(p > 1.0)) throw ConfigError("p>1 required");
  if (!(s < 1.0)) throw ConfigError("divergent seminorm: s >= 1 with a non-constant function");
  if (!u.is_lipschitz())
    throw ConfigError("divergent seminorm: indicator functions are not admitted in Gagliardo integrals");
  u.validate();
}

}  // namespace

IntegralResult integrate_gagliardo(const TestFunction& u, double p, double s, const PowerExpr& a,
                                   const QuadratureScheme& scheme, const Geometry& geom) {
  if (u.is_zero()) return {};
  check_common(u, p, s);
  const Kernel k{u, geom, p, s, 1.0, a, PowerExpr::constant(1.0), u.lipschitz_bound(geom)};
  return drive(k, scheme);
}

IntegralResult nested_hs_integral(const TestFunction& u, const PowerExpr& z, const PowerExpr& v,
                                  double p, double q, double s, const QuadratureScheme& scheme,
                                  const Geometry& geom) {
  if (u.is_zero()) return {};
  check_common(u, p, s);
  if (!z.is_radial() || !v.is_radial()) throw ConfigError("v and z must depend on |x| only");
  if (q < p) throw ConfigError("p <= q required");
  const Kernel k{u, geom, p, s, q / p, z, v, u.lipschitz_bound(geom)};
  return drive(k, scheme);
}

}  // namespace fhardy
