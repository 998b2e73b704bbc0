#include "fhardy/angular.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "fhardy/error.hpp"
#include "fhardy/rules.hpp"

namespace fhardy {

namespace {

constexpr double kPi = std::numbers::pi;

// Euclidean direction d -> quasi-sphere node and Jacobian |d|^-Q <nu d, d>
void push_node(const Geometry& geom, const Point& d, double euclid_weight, AngularRule& rule) {
  const auto& g = geom.group();
  const double n = geom.norm(d);
  double nd = 0.0;
  for (int i = 0; i < g.dim; ++i) nd += g.nu[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
  rule.omega.push_back(geom.dil(1.0 / n, d));
  rule.weight.push_back(euclid_weight * std::pow(n, -g.Q) * nd);
}

// angles in (0, pi/2) where |cos t|^(1/nu1) = |sin t|^(1/nu2)
double max_norm_kink(const GroupSpec& g) {
  const double e1 = 1.0 / g.nu[0];
  const double e2 = 1.0 / g.nu[1];
  double lo = 0.0;
  double hi = 0.5 * kPi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::pow(std::cos(mid), e1) > std::pow(std::sin(mid), e2))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

AngularRule rule_1d(const Geometry& geom) {
  AngularRule rule;
  push_node(geom, {-1.0, 0.0, 0.0}, 1.0, rule);
  push_node(geom, {1.0, 0.0, 0.0}, 1.0, rule);
  return rule;
}

AngularRule rule_2d(const Geometry& geom, int n) {
  AngularRule rule;
  if (geom.quasi_norm().kind == NormKind::aniso_max) {
    const double k = max_norm_kink(geom.group());
    std::vector<double> br;
    for (int q = 0; q < 4; ++q) {
      const double base = q * 0.5 * kPi;
      br.push_back(base);
      br.push_back(base + ((q % 2 == 0) ? k : 0.5 * kPi - k));
    }
    br.push_back(2.0 * kPi);
    const int order = std::max(4, n / 4);
    const Rule1D r = rule_from_breaks(br, order);
    for (const auto& node : r)
      push_node(geom, {std::cos(node.x), std::sin(node.x), 0.0}, node.w, rule);
    return rule;
  }
  // periodic trapezoid, offset to keep nodes off the axes
  const double h = 2.0 * kPi / n;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) * h;
    push_node(geom, {std::cos(t), std::sin(t), 0.0}, h, rule);
  }
  return rule;
}

// t = cos(theta) with Gauss nodes in theta, so the weight sin(theta) is carried
// by the rule and the integrand stays smooth at the poles
Rule1D polar_rule(int n) {
  const int half = std::max(2, n / 2);
  Rule1D th;
  append_panel(th, 0.0, 0.5 * kPi, half);
  append_panel(th, 0.5 * kPi, kPi, half);
  Rule1D r;
  for (const auto& node : th) r.push_back({std::cos(node.x), node.w * std::sin(node.x)});
  return r;
}

// Rescale so that constants integrate to the sphere measure exactly; the
// shape error left over only affects integrands that vary on the sphere.
AngularRule normalized(AngularRule rule, const Geometry& geom) {
  const double f = geom.sphere_measure() / rule.total();
  for (auto& w : rule.weight) w *= f;
  return rule;
}

AngularRule rule_3d(const Geometry& geom, int n) {
  AngularRule rule;
  const Rule1D tr = polar_rule(n);
  const int m = 2 * n;
  const double h = 2.0 * kPi / m;
  for (const auto& t : tr) {
    const double st = std::sqrt(std::max(0.0, 1.0 - t.x * t.x));
    for (int k = 0; k < m; ++k) {
      const double psi = (k + 0.5) * h;
      push_node(geom, {st * std::cos(psi), st * std::sin(psi), t.x}, t.w * h, rule);
    }
  }
  return rule;
}

}  // namespace

double AngularRule::total() const { return std::accumulate(weight.begin(), weight.end(), 0.0); }

int angular_resolution(int base, int level) {
  double n = base;
  for (int i = 0; i < level; ++i) n *= 1.5;
  int k = static_cast<int>(std::lround(n));
  if (k % 2 != 0) ++k;
  return std::max(k, 4);
}

namespace {

AngularRule raw_angular_rule(const Geometry& geom, int n) {
  switch (geom.dim()) {
    case 1: return rule_1d(geom);
    case 2: return rule_2d(geom, n);
    default: return rule_3d(geom, n);
  }
}

}  // namespace

AngularRule angular_rule(const Geometry& geom, int n) { return normalized(raw_angular_rule(geom, n), geom); }

AngularRule reduced_angular_rule(const Geometry& geom, int n) {
  if (!geom.rotation_symmetric()) return angular_rule(geom, n);
  AngularRule rule;
  if (geom.dim() == 1) {
    push_node(geom, {1.0, 0.0, 0.0}, 2.0, rule);
  } else if (geom.dim() == 2) {
    push_node(geom, {1.0, 0.0, 0.0}, 2.0 * kPi, rule);
  } else {
    for (const auto& t : polar_rule(n)) {
      const double st = std::sqrt(std::max(0.0, 1.0 - t.x * t.x));
      push_node(geom, {st, 0.0, t.x}, t.w * 2.0 * kPi, rule);
    }
  }
  return normalized(std::move(rule), geom);
}

}  // namespace fhardy
