#include "fhardy/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fhardy/angular.hpp"
#include "fhardy/error.hpp"

namespace fhardy {

std::string to_string(Profile p) {
  switch (p) {
    case Profile::tent: return "tent";
    case Profile::truncated_power: return "truncated_power";
    case Profile::gaussian_ring: return "gaussian_ring";
    case Profile::indicator: return "indicator";
    case Profile::step: return "step";
  }
  return "?";
}

Profile parse_profile(const std::string& name) {
  if (name == "tent") return Profile::tent;
  if (name == "truncated_power") return Profile::truncated_power;
  if (name == "gaussian_ring") return Profile::gaussian_ring;
  if (name == "indicator") return Profile::indicator;
  if (name == "step") return Profile::step;
  throw ConfigError("unknown profile '" + name + "'");
}

void TestFunction::validate() const {
  auto bad = [&](const std::string& m) { throw ConfigError("test function '" + id + "': " + m); };
  if (!std::isfinite(r0) || !std::isfinite(R) || !std::isfinite(height) || !std::isfinite(angular_eps))
    bad("parameters must be finite");
  if (!(R > r0)) bad("R must exceed r0");
  if (std::abs(angular_eps) > 1.0) bad("|angular_eps| must be at most 1");
  if (profile == Profile::indicator || profile == Profile::step) {
    if (r0 < 0.0) bad("r0 must be nonnegative");
    if (profile == Profile::step && !(peak > r0 && peak < R)) bad("peak must lie strictly between r0 and R");
    if (!std::isfinite(height2)) bad("parameters must be finite");
    return;
  }
  if (!(r0 > 0.0)) bad("r0 must be positive");
  switch (profile) {
    case Profile::tent:
      if (!(peak > r0 && peak < R)) bad("peak must lie strictly between r0 and R");
      break;
    case Profile::truncated_power:
      if (!(ramp > 0.0) || 2.0 * ramp > std::log(R / r0)) bad("ramp must be positive and fit twice in log(R/r0)");
      if (!std::isfinite(kappa)) bad("kappa must be finite");
      break;
    case Profile::gaussian_ring:
      if (!(sigma > 0.0)) bad("sigma must be positive");
      break;
    case Profile::indicator:
    case Profile::step: break;
  }
}

namespace {

// C1 cosine ramp from 0 at t=0 to 1 at t=1
double ramp_up(double t) { return 0.5 * (1.0 - std::cos(std::numbers::pi * t)); }
double ramp_up_d(double t) { return 0.5 * std::numbers::pi * std::sin(std::numbers::pi * t); }

}  // namespace

double TestFunction::radial(double r) const {
  if (profile == Profile::indicator) return (r >= r0 && r <= R) ? height : 0.0;
  if (profile == Profile::step) return (r >= r0 && r <= R) ? (r < peak ? height : height2) : 0.0;
  if (!(r > r0 && r < R)) return 0.0;
  switch (profile) {
    case Profile::tent:
      return r <= peak ? height * (r - r0) / (peak - r0) : height * (R - r) / (R - peak);
    case Profile::truncated_power: {
      const double lr = std::log(r / r0);
      const double lR = std::log(R / r0);
      double eta = 1.0;
      if (lr < ramp)
        eta = ramp_up(lr / ramp);
      else if (lr > lR - ramp)
        eta = ramp_up((lR - lr) / ramp);
      return height * std::exp(kappa * lr) * eta;
    }
    case Profile::gaussian_ring: {
      const double c = 0.5 * (r0 + R);
      const double edge = std::exp(-std::pow((R - c) / sigma, 2));
      return height * std::max(0.0, std::exp(-std::pow((r - c) / sigma, 2)) - edge);
    }
    case Profile::indicator:
    case Profile::step: break;
  }
  return 0.0;
}

double TestFunction::radial_derivative(double r) const {
  if (!is_lipschitz()) return 0.0;
  if (!(r > r0 && r < R)) return 0.0;
  switch (profile) {
    case Profile::tent:
      return r <= peak ? height / (peak - r0) : -height / (R - peak);
    case Profile::truncated_power: {
      const double lr = std::log(r / r0);
      const double lR = std::log(R / r0);
      double eta = 1.0;
      double deta = 0.0;  // d eta / d log r
      if (lr < ramp) {
        eta = ramp_up(lr / ramp);
        deta = ramp_up_d(lr / ramp) / ramp;
      } else if (lr > lR - ramp) {
        eta = ramp_up((lR - lr) / ramp);
        deta = -ramp_up_d((lR - lr) / ramp) / ramp;
      }
      return height * std::exp(kappa * lr) * (kappa * eta + deta) / r;
    }
    case Profile::gaussian_ring: {
      const double c = 0.5 * (r0 + R);
      const double z = (r - c) / sigma;
      return -height * 2.0 * z / sigma * std::exp(-z * z);
    }
    case Profile::indicator:
    case Profile::step: break;
  }
  return 0.0;
}

double TestFunction::value(const Geometry& geom, const Point& x) const {
  return value(geom, x, geom.norm(x));
}

double TestFunction::value(const Geometry& geom, const Point& x, double r) const {
  const double phi = radial(r);
  if (phi == 0.0 || angular_eps == 0.0) return phi;
  const double nu1 = geom.group().nu[0];
  const double w1 = x[0] * (nu1 == 1.0 ? 1.0 / r : std::pow(r, -nu1));
  return phi * (1.0 + angular_eps * w1);
}

std::vector<double> TestFunction::breakpoints() const {
  std::vector<double> b{r0, R};
  if (profile == Profile::tent || profile == Profile::step) b.push_back(peak);
  if (profile == Profile::truncated_power) {
    b.push_back(r0 * std::exp(ramp));
    b.push_back(R * std::exp(-ramp));
  }
  if (profile == Profile::gaussian_ring) b.push_back(0.5 * (r0 + R));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (!b.empty() && b.front() <= 0.0) b.erase(b.begin());
  return b;
}

double TestFunction::feature_scale() const {
  const auto b = breakpoints();
  double m = R - r0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) m = std::min(m, b[i + 1] - b[i]);
  if (profile == Profile::gaussian_ring) m = std::min(m, sigma);
  return m;
}

double TestFunction::max_abs() const {
  double m = std::abs(height);
  if (profile == Profile::step) m = std::max(m, std::abs(height2));
  if (profile == Profile::truncated_power)
    m = std::abs(height) * std::max(1.0, std::pow(R / r0, kappa));
  return m * (1.0 + std::abs(angular_eps));
}

TestFunction TestFunction::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw InputError("dilation factor must be positive");
  TestFunction t = *this;
  t.r0 /= lambda;
  t.R /= lambda;
  t.peak /= lambda;
  t.sigma /= lambda;
  return t;
}

TestFunction TestFunction::scaled(double c) const {
  TestFunction t = *this;
  t.height *= c;
  t.height2 *= c;
  return t;
}

double TestFunction::lipschitz_bound(const Geometry& geom) const {
  if (!is_lipschitz()) return std::numeric_limits<double>::infinity();
  if (is_zero()) return 0.0;
  const AngularRule ang = angular_rule(geom, 16);
  const int nr = 200;
  double best = 0.0;
  for (int i = 0; i <= nr; ++i) {
    const double r = r0 + (R - r0) * (i + 0.5) / (nr + 1);
    for (const Point& w : ang.omega) {
      const Point x = geom.dil(r, w);
      const double h = 1e-6 * (1.0 + std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]));
      double g2 = 0.0;
      for (int k = 0; k < geom.dim(); ++k) {
        Point a = x;
        Point b = x;
        a[static_cast<std::size_t>(k)] += h;
        b[static_cast<std::size_t>(k)] -= h;
        const double d = (value(geom, a) - value(geom, b)) / (2.0 * h);
        g2 += d * d;
      }
      best = std::max(best, std::sqrt(g2));
    }
  }
  return 1.25 * best;
}

}  // namespace fhardy
