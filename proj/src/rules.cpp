#include "fhardy/rules.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fhardy {

namespace {

Rule1D compute_gauss_legendre(int n) {
  Rule1D rule(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[static_cast<std::size_t>(i)] = {-x, w};
    rule[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  if (n % 2 == 1) rule[static_cast<std::size_t>(n / 2)].x = 0.0;
  return rule;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    Rule1D r = (n == 1) ? Rule1D{{0.0, 2.0}} : compute_gauss_legendre(n);
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

void append_panel(Rule1D& rule, double a, double b, int order) {
  const Rule1D& base = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (const auto& n : base) rule.push_back({mid + half * n.x, half * n.w});
}

std::vector<double> uniform_breaks(double a, double b, int panels) {
  panels = std::max(panels, 1);
  std::vector<double> br(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) br[static_cast<std::size_t>(i)] = a + (b - a) * i / panels;
  br.back() = b;
  return br;
}

std::vector<double> geometric_breaks(double a, double b, double per_decade) {
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log10(b / a) * per_decade - 1e-9)));
  std::vector<double> br(static_cast<std::size_t>(panels) + 1);
  const double la = std::log(a);
  const double lb = std::log(b);
  for (int i = 0; i <= panels; ++i) br[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / panels);
  br.front() = a;
  br.back() = b;
  return br;
}

std::vector<double> graded_breaks(double a, double b, bool grade_lo, bool grade_hi,
                                  double smallest, int panels) {
  const double len = b - a;
  panels = std::max(panels, 1);
  // offsets from each graded end, growing by a factor of two
  const double coarse = len / panels;
  std::vector<double> lo_offsets;
  std::vector<double> hi_offsets;
  const int sides = (grade_lo ? 1 : 0) + (grade_hi ? 1 : 0);
  const double limit = sides == 2 ? 0.5 * len : len;
  auto build = [&](std::vector<double>& off) {
    double h = smallest * len;
    while (h < std::min(coarse, limit)) {
      off.push_back(h);
      h *= 2.0;
    }
  };
  if (grade_lo) build(lo_offsets);
  if (grade_hi) build(hi_offsets);
  const double lo_edge = a + (lo_offsets.empty() ? 0.0 : lo_offsets.back());
  const double hi_edge = b - (hi_offsets.empty() ? 0.0 : hi_offsets.back());
  std::vector<double> br;
  br.push_back(a);
  for (double o : lo_offsets) br.push_back(a + o);
  const int mid_panels = std::max(1, static_cast<int>(std::ceil((hi_edge - lo_edge) / coarse - 1e-9)));
  for (int i = 1; i < mid_panels; ++i) br.push_back(lo_edge + (hi_edge - lo_edge) * i / mid_panels);
  for (auto it = hi_offsets.rbegin(); it != hi_offsets.rend(); ++it) br.push_back(b - *it);
  br.push_back(b);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(),
                       [&](double x, double y) { return std::abs(x - y) <= 1e-15 * std::abs(len); }),
           br.end());
  return br;
}

Rule1D rule_from_breaks(const std::vector<double>& breaks, int order) {
  Rule1D rule;
  rule.reserve(breaks.size() * static_cast<std::size_t>(order));
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) append_panel(rule, breaks[i], breaks[i + 1], order);
  }
  return rule;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, int level) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  const double h = std::ldexp(1.0, -level);
  const double t_max = 3.5;
  const double pi2 = 0.5 * std::numbers::pi;
  double sum = 0.0;
  const int steps = static_cast<int>(t_max / h);
  for (int k = -steps; k <= steps; ++k) {
    const double t = k * h;
    const double u = pi2 * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = pi2 * std::cosh(t) / (ch * ch);
    if (w < 1e-300) continue;
    // distance to the nearer endpoint, computed without cancellation
    const double e = 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0);  // 1 - tanh|u|
    const double dist = half * e;
    if (dist <= 0.0) continue;
    const double x = (u < 0) ? a + dist : b - dist;
    if (x <= a || x >= b) continue;
    sum += w * f(x);
  }
  return sum * h * half;
}

}  // namespace fhardy
