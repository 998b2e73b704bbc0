#include "fhardy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fhardy/angular.hpp"
#include "fhardy/error.hpp"
#include "fhardy/radial.hpp"
#include "fhardy/rules.hpp"

namespace fhardy {

QuadratureScheme QuadratureScheme::refined(int level) const {
  QuadratureScheme s = *this;
  const double f = std::ldexp(1.0, level);
  s.radial_panels = static_cast<int>(radial_panels * f);
  s.per_decade = per_decade * f;
  s.cartesian_panels = static_cast<int>(cartesian_panels * f);
  s.level = level;
  return s;
}

int QuadratureScheme::angular_nodes(int dim) const {
  const int base = angular > 0 ? angular : (dim >= 3 ? 8 : 24);
  return angular_resolution(base, level);
}

void QuadratureScheme::validate() const {
  if (order < 1 || order > 64) throw ConfigError("quadrature order must be in 1..64");
  if (radial_panels < 1 || angular < 0 || angular == 1 || cartesian_panels < 1) throw ConfigError("panel counts must be positive");
  if (!(per_decade > 0.0)) throw ConfigError("per_decade must be positive");
  if (!(r_min_factor > 0.0 && r_min_factor < 1.0)) throw ConfigError("r_min_factor must lie in (0, 1)");
  if (!(r_max_factor > 1.0 && std::isfinite(r_max_factor))) throw ConfigError("r_max_factor must exceed 1");
  if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  if (max_level < 1 || max_level > 6) throw ConfigError("max_level must be in 1..6");
  if (budget < 1) throw ConfigError("budget must be positive");
}

namespace {

[[noreturn]] void bad_value(const Point& x, int dim, double v) {
  std::ostringstream os;
  os << "integrand returned " << v << " at (";
  for (int i = 0; i < dim; ++i) os << (i ? ", " : "") << x[static_cast<std::size_t>(i)];
  os << ")";
  throw NumericError(os.str());
}

double cartesian_level(const std::function<double(const Point&)>& f, const Box& box, int panels,
                       int order, int dim, Exec exec) {
  std::vector<Rule1D> axes;
  for (int d = 0; d < dim; ++d)
    axes.push_back(rule_from_breaks(uniform_breaks(box[static_cast<std::size_t>(d)].first,
                                                   box[static_cast<std::size_t>(d)].second, panels),
                                    order));
  const auto n0 = static_cast<std::int64_t>(axes[0].size());
  const auto vals = map_nodes<double>(n0, exec, [&](std::int64_t i) {
    double s = 0.0;
    Point x{0.0, 0.0, 0.0};
    x[0] = axes[0][static_cast<std::size_t>(i)].x;
    const std::size_t n1 = dim > 1 ? axes[1].size() : 1;
    const std::size_t n2 = dim > 2 ? axes[2].size() : 1;
    for (std::size_t j = 0; j < n1; ++j) {
      double wj = 1.0;
      if (dim > 1) {
        x[1] = axes[1][j].x;
        wj = axes[1][j].w;
      }
      for (std::size_t k = 0; k < n2; ++k) {
        double wk = 1.0;
        if (dim > 2) {
          x[2] = axes[2][k].x;
          wk = axes[2][k].w;
        }
        const double v = f(x);
        if (!std::isfinite(v)) bad_value(x, dim, v);
        s += wj * wk * v;
      }
    }
    return s * axes[0][static_cast<std::size_t>(i)].w;
  });
  double total = 0.0;
  for (double v : vals) total += v;
  return total;
}

// Each axis grows on its own until f is negligible on the faces across it, so
// anisotropic decay does not force a cube sized by the slowest direction.
Box auto_box(const std::function<double(const Point&)>& f, int dim) {
  std::array<double, kMaxDim> L{1.0, 1.0, 1.0};
  const int m = 8;
  for (int round = 0; round < 160; ++round) {
    double inner = 0.0;
    std::array<double, kMaxDim> face{0.0, 0.0, 0.0};
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= (dim > 1 ? m : 0); ++j)
        for (int k = 0; k <= (dim > 2 ? m : 0); ++k) {
          const std::array<int, kMaxDim> idx{i, j, k};
          Point x{0.0, 0.0, 0.0};
          for (int d = 0; d < dim; ++d)
            x[static_cast<std::size_t>(d)] = L[static_cast<std::size_t>(d)] * (-1.0 + 2.0 * idx[static_cast<std::size_t>(d)] / m);
          const double v = std::abs(f(x));
          bool edge = false;
          for (int d = 0; d < dim; ++d) {
            const int id = idx[static_cast<std::size_t>(d)];
            if (id == 0 || id == m) {
              edge = true;
              face[static_cast<std::size_t>(d)] = std::max(face[static_cast<std::size_t>(d)], v);
            }
          }
          if (!edge) inner = std::max(inner, v);
        }
    bool grown = false;
    for (int d = 0; d < dim; ++d) {
      const auto u = static_cast<std::size_t>(d);
      if (!(inner > 0.0) || face[u] > 1e-16 * inner) {
        L[u] *= 2.0;
        grown = true;
      }
    }
    if (!grown) {
      Box b;
      for (int d = 0; d < dim; ++d) b.emplace_back(-L[static_cast<std::size_t>(d)], L[static_cast<std::size_t>(d)]);
      return b;
    }
    for (int d = 0; d < dim; ++d)
      if (L[static_cast<std::size_t>(d)] > 1e12)
        throw NumericError("integrate_cartesian: integrand does not decay; give an explicit box");
  }
  throw NumericError("integrate_cartesian: integrand does not decay; give an explicit box");
}

}  // namespace

IntegralResult integrate_cartesian(const std::function<double(const Point&)>& f, Box box,
                                   const QuadratureScheme& scheme, int dim) {
  if (dim < 1 || dim > kMaxDim) throw InputError("integrate_cartesian: dimension must be 1..3");
  if (box.empty()) box = auto_box(f, dim);
  if (static_cast<int>(box.size()) != dim) throw InputError("integrate_cartesian: box dimension mismatch");
  const int n = scheme.cartesian_panels;
  const double coarse = cartesian_level(f, box, n, scheme.order, dim, scheme.exec);
  const double fine = cartesian_level(f, box, 2 * n, scheme.order, dim, scheme.exec);
  const auto per_axis = static_cast<std::int64_t>(n) * scheme.order;
  std::int64_t evals = 1;
  for (int d = 0; d < dim; ++d) evals *= per_axis;
  evals += evals << dim;
  return {fine, std::abs(fine - coarse), evals};
}

std::vector<double> radial_breaks(double a, double b, double per_decade, const std::vector<double>& extra) {
  std::vector<double> br = geometric_breaks(a, b, per_decade);
  for (double e : extra)
    if (e > a && e < b) br.push_back(e);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

namespace {

struct RangeSum {
  double value = 0.0;
  double last_decade = 0.0;
  double prev_decade = 0.0;
  std::int64_t evals = 0;
};

// sum over radial nodes in [lo, hi] and the angular rule
RangeSum polar_range(const std::function<double(double, const Point&)>& f, double lo, double hi,
                     const std::vector<double>& extra, const QuadratureScheme& sch,
                     const Geometry& geom, bool reduced) {
  std::vector<double> br = radial_breaks(lo, hi, sch.per_decade, extra);
  // uniform refinement between the caller's breaks
  std::vector<double> inner;
  for (double e : extra)
    if (e >= lo && e <= hi) inner.push_back(e);
  std::sort(inner.begin(), inner.end());
  for (std::size_t i = 0; i + 1 < inner.size(); ++i) {
    const auto u = uniform_breaks(inner[i], inner[i + 1], sch.radial_panels);
    br.insert(br.end(), u.begin(), u.end());
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  const Rule1D rule = rule_from_breaks(br, sch.order);
  const int na = sch.angular_nodes(geom.dim());
  const AngularRule ang = reduced ? reduced_angular_rule(geom, na) : angular_rule(geom, na);
  const double Q = geom.Q();
  const auto vals = map_nodes<double>(static_cast<std::int64_t>(rule.size()), sch.exec, [&](std::int64_t i) {
    const double r = rule[static_cast<std::size_t>(i)].x;
    double s = 0.0;
    for (std::size_t k = 0; k < ang.size(); ++k) {
      const double v = f(r, ang.omega[k]);
      if (!std::isfinite(v)) bad_value(geom.dil(r, ang.omega[k]), geom.dim(), v);
      s += ang.weight[k] * v;
    }
    return s * rule[static_cast<std::size_t>(i)].w * std::pow(r, Q - 1.0);
  });
  RangeSum out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out.value += vals[i];
    if (rule[i].x > hi / 10.0)
      out.last_decade += vals[i];
    else if (rule[i].x > hi / 100.0)
      out.prev_decade += vals[i];
  }
  out.evals = static_cast<std::int64_t>(rule.size() * ang.size());
  return out;
}

// sigma-average of f on the sphere of radius r
double shell(const std::function<double(double, const Point&)>& f, double r, const AngularRule& ang) {
  double s = 0.0;
  for (std::size_t k = 0; k < ang.size(); ++k) s += ang.weight[k] * f(r, ang.omega[k]);
  return s;
}

}  // namespace

IntegralResult integrate_polar(const std::function<double(double, const Point&)>& f,
                               const QuadratureScheme& scheme, const Geometry& geom,
                               const PolarOptions& opt) {
  const double lo = opt.scale * scheme.r_min_factor;
  const double hi = opt.scale * scheme.r_max_factor;
  double prev = 0.0;
  IntegralResult res;
  for (int level = 0; level <= 1; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    const RangeSum rs = polar_range(f, lo, hi, opt.breaks, sch, geom, opt.reduced);
    res.evaluations += rs.evals;
    if (std::abs(rs.last_decade) > 1e-6 * std::abs(rs.value) &&
        std::abs(rs.last_decade) >= 0.999 * std::abs(rs.prev_decade))
      throw NumericError("integrate_polar: divergent radial tail (partial sums do not decrease)", rs.value);
    if (level == 0) {
      prev = rs.value;
      continue;
    }
    const int na = sch.angular_nodes(geom.dim());
    const AngularRule ang = opt.reduced ? reduced_angular_rule(geom, na) : angular_rule(geom, na);
    const double head = shell(f, lo, ang) * std::pow(lo, geom.Q()) / geom.Q();
    res.value = rs.value + head;
    res.error_bound = std::abs(rs.value - prev) + std::abs(head) + std::abs(rs.last_decade);
  }
  return res;
}

IntegralResult integrate_annulus(const std::function<double(double, const Point&)>& f, double lo,
                                 double hi, const std::vector<double>& breaks,
                                 const QuadratureScheme& scheme, const Geometry& geom, bool reduced) {
  if (!(hi > lo) || lo < 0.0) throw InputError("integrate_annulus: need 0 <= lo < hi");
  const bool core = lo == 0.0;
  const double a = core ? 1e-12 * hi : lo;
  std::vector<double> br{a, hi};
  for (double b : breaks)
    if (b > a && b < hi) br.push_back(b);
  double prev = 0.0;
  IntegralResult res;
  for (int level = 0; level <= 1; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    const RangeSum rs = polar_range(f, a, hi, br, sch, geom, reduced);
    res.evaluations += rs.evals;
    if (level == 0) {
      prev = rs.value;
      continue;
    }
    double head = 0.0;
    if (core) {
      const int na = sch.angular_nodes(geom.dim());
      const AngularRule ang = reduced ? reduced_angular_rule(geom, na) : angular_rule(geom, na);
      head = shell(f, a, ang) * std::pow(a, geom.Q()) / geom.Q();
    }
    res.value = rs.value + head;
    res.error_bound = std::abs(rs.value - prev) + std::abs(head);
  }
  return res;
}

IntegralResult ball_integral(const std::function<double(const Point&)>& w, double radius,
                             const QuadratureScheme& scheme, const Geometry& geom) {
  if (!(radius > 0.0)) throw InputError("ball_integral: radius must be positive");
  auto f = [&](double r, const Point& om) { return w(geom.dil(r, om)); };
  const double lo = radius * 1e-9;
  double prev = 0.0;
  IntegralResult res;
  for (int level = 0; level <= 1; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    const RangeSum rs = polar_range(f, lo, radius, {lo, radius}, sch, geom, false);
    res.evaluations += rs.evals;
    if (level == 0) {
      prev = rs.value;
      continue;
    }
    const AngularRule ang = angular_rule(geom, sch.angular_nodes(geom.dim()));
    const double f0 = shell(f, lo, ang);
    const double f1 = shell(f, 10.0 * lo, ang);
    double k = 0.0;
    if (f0 > 0.0 && f1 > 0.0) k = std::log10(f1 / f0);
    if (geom.Q() + k <= 0.0) throw NumericError("ball_integral: integrand not integrable at the origin", rs.value);
    const double head = f0 * std::pow(lo, geom.Q()) / (geom.Q() + k);
    res.value = rs.value + head;
    res.error_bound = std::abs(rs.value - prev) + std::abs(head);
  }
  return res;
}

IntegralResult complement_integral(const std::function<double(const Point&)>& w, double radius,
                                   const QuadratureScheme& scheme, const Geometry& geom) {
  if (!(radius > 0.0)) throw InputError("complement_integral: radius must be positive");
  auto f = [&](double r, const Point& om) { return w(geom.dil(r, om)); };
  const double hi = radius * 1e9;
  double prev = 0.0;
  IntegralResult res;
  for (int level = 0; level <= 1; ++level) {
    const QuadratureScheme sch = scheme.refined(level);
    const RangeSum rs = polar_range(f, radius, hi, {}, sch, geom, false);
    res.evaluations += rs.evals;
    if (level == 0) {
      prev = rs.value;
      continue;
    }
    const AngularRule ang = angular_rule(geom, sch.angular_nodes(geom.dim()));
    const double f0 = shell(f, hi, ang);
    const double f1 = shell(f, hi / 10.0, ang);
    double k = -1e300;
    if (f0 > 0.0 && f1 > 0.0) k = std::log10(f0 / f1);
    if (f0 != 0.0 && geom.Q() + k >= 0.0)
      throw NumericError("complement_integral: divergent complement tail", rs.value);
    const double tail = f0 == 0.0 ? 0.0 : f0 * std::pow(hi, geom.Q()) / (-(geom.Q() + k));
    res.value = rs.value + tail;
    res.error_bound = std::abs(rs.value - prev) + std::abs(tail);
  }
  return res;
}

namespace {

LogDensity radial_density(const PowerExpr& w, const Geometry& geom) {
  if (!w.is_radial()) throw ConfigError("radial weight may depend on |x| only");
  const double ls = std::log(geom.sphere_measure());
  const double Q = geom.Q();
  return [w, ls, Q](double t) { return ls + w.log_eval(t) + (Q - 1.0) * std::log(t); };
}

IntegralResult from_log(const LogValue& v, const char* what) {
  if (!v.finite) throw NumericError(std::string(what) + ": " + v.diagnostic);
  const double val = v.value();
  return {val, val * v.rel_error + 1e-13 * val, 0};
}

}  // namespace

IntegralResult ball_integral(const PowerExpr& w, double radius, const Geometry& geom) {
  if (!(radius > 0.0)) throw InputError("ball_integral: radius must be positive");
  return from_log(log_integral_below(radial_density(w, geom), radius), "ball_integral");
}

IntegralResult complement_integral(const PowerExpr& w, double radius, const Geometry& geom) {
  if (!(radius > 0.0)) throw InputError("complement_integral: radius must be positive");
  return from_log(log_integral_above(radial_density(w, geom), radius), "complement_integral: divergent complement tail");
}

}  // namespace fhardy
