#include "fhardy/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fhardy/rules.hpp"

namespace fhardy {

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double LogValue::value() const {
  if (!finite) return std::numeric_limits<double>::infinity();
  return std::exp(log);
}

double log_panel(const LogDensity& f, double a, double b, int order) {
  if (!(b > a)) return kNegInf;
  const Rule1D& gl = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double vals[64];
  double m = kNegInf;
  const int n = std::min<int>(order, 64);
  for (int i = 0; i < n; ++i) {
    const auto& node = gl[static_cast<std::size_t>(i)];
    vals[i] = f(mid + half * node.x) + std::log(node.w * half);
    if (std::isnan(vals[i])) vals[i] = kNegInf;
    m = std::max(m, vals[i]);
  }
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::exp(vals[i] - m);
  return m + std::log(s);
}

namespace {

constexpr double kLn10 = 2.302585092994046;

struct Slopes {
  double near;  // slope next to the end point
  double far;
};

Slopes slopes(const LogDensity& f, double t, double step) {
  const double f0 = f(t);
  const double f1 = f(t * step);
  const double f2 = f(t * step * step);
  const double l = std::log(step);
  return {(f1 - f0) / l, (f2 - f1) / l};
}

LogValue power_piece(double logf_t, double log_t, const Slopes& k, bool head) {
  LogValue v;
  if (logf_t == kNegInf) return v;
  // exponent of t in the integral t^(k+1)
  const double e = head ? k.near + 1.0 : -(k.near + 1.0);
  const bool steep = head ? k.near > 50.0 : k.near < -50.0;
  if (!(e > 1e-12)) {
    v.finite = false;
    v.diagnostic = head ? "integral diverges at the origin (local power " + std::to_string(k.near) + ")"
                        : "integral diverges at infinity (local power " + std::to_string(k.near) + ")";
    return v;
  }
  v.log = logf_t + log_t - std::log(e);
  const double drift = std::abs(k.near - k.far);
  if (!steep && drift > 1e-3 * std::max(1.0, std::abs(k.near))) {
    v.rel_error = std::min(1.0, drift / e);
    v.diagnostic = "power-law extrapolation not converged";
  } else {
    v.rel_error = steep ? 0.0 : drift / e;
  }
  return v;
}

}  // namespace

double log_integrate(const LogDensity& f, double a, double b, double per_decade, int order) {
  if (!(b > a)) return kNegInf;
  if (a <= 0.0) throw std::invalid_argument("log_integrate: a must be positive");
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log10(b / a) * per_decade - 1e-9)));
  const double la = std::log(a);
  const double lb = std::log(b);
  double acc = kNegInf;
  double prev = a;
  for (int k = 1; k <= panels; ++k) {
    const double next = k == panels ? b : std::exp(la + (lb - la) * k / panels);
    acc = log_add(acc, log_panel(f, prev, next, order));
    prev = next;
  }
  return acc;
}

LogValue log_integral_below(const LogDensity& f, double r, double decades) {
  const double lo = r * std::pow(10.0, -decades);
  LogValue head = extrapolate_head(f, lo);
  if (!head.finite) return head;
  LogValue v;
  const double body = log_integrate(f, lo, r);
  v.log = log_add(body, head.log);
  v.rel_error = head.rel_error * std::exp(std::min(0.0, head.log - v.log));
  v.diagnostic = head.diagnostic;
  return v;
}

LogValue log_integral_above(const LogDensity& f, double r, double decades) {
  const double hi = r * std::pow(10.0, decades);
  LogValue tail = extrapolate_tail(f, hi);
  if (!tail.finite) return tail;
  LogValue v;
  const double body = log_integrate(f, r, hi);
  v.log = log_add(body, tail.log);
  v.rel_error = tail.rel_error * std::exp(std::min(0.0, tail.log - v.log));
  v.diagnostic = tail.diagnostic;
  return v;
}

LogValue extrapolate_head(const LogDensity& f, double t) {
  return power_piece(f(t), std::log(t), slopes(f, t, 10.0), true);
}

LogValue extrapolate_tail(const LogDensity& f, double t) {
  const Slopes s = slopes(f, t, 0.1);
  return power_piece(f(t), std::log(t), s, false);
}

RadialCumulative::RadialCumulative(LogDensity f, double scale)
    : RadialCumulative(std::move(f), scale, Options{}) {}

RadialCumulative::RadialCumulative(LogDensity f, double scale, Options opt)
    : f_(std::move(f)), opt_(opt) {
  const int cells = static_cast<int>(std::ceil(2.0 * opt_.decades * opt_.panels_per_decade));
  const double l0 = std::log(scale) - opt_.decades * kLn10;
  const double l1 = std::log(scale) + opt_.decades * kLn10;
  grid_.resize(static_cast<std::size_t>(cells) + 1);
  for (int k = 0; k <= cells; ++k) grid_[static_cast<std::size_t>(k)] = std::exp(l0 + (l1 - l0) * k / cells);
  std::vector<double> piece(static_cast<std::size_t>(cells));
  for (int k = 0; k < cells; ++k)
    piece[static_cast<std::size_t>(k)] =
        log_panel(f_, grid_[static_cast<std::size_t>(k)], grid_[static_cast<std::size_t>(k) + 1], opt_.order);
  head_ = extrapolate_head(f_, grid_.front());
  tail_ = extrapolate_tail(f_, grid_.back());
  cum_below_.assign(grid_.size(), kNegInf);
  cum_above_.assign(grid_.size(), kNegInf);
  cum_below_[0] = head_.finite ? head_.log : kNegInf;
  for (std::size_t k = 0; k + 1 < grid_.size(); ++k) cum_below_[k + 1] = log_add(cum_below_[k], piece[k]);
  cum_above_.back() = tail_.finite ? tail_.log : kNegInf;
  for (std::size_t k = grid_.size() - 1; k > 0; --k) cum_above_[k - 1] = log_add(cum_above_[k], piece[k - 1]);
}

std::size_t RadialCumulative::cell(double r) const {
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  if (it == grid_.begin()) return 0;
  const auto k = static_cast<std::size_t>(it - grid_.begin()) - 1;
  return std::min(k, grid_.size() - 2);
}

LogValue RadialCumulative::below(double r) const {
  LogValue v;
  if (!head_.finite) return head_;
  if (r < grid_.front()) return extrapolate_head(f_, r);
  const std::size_t k = cell(r);
  v.log = log_add(cum_below_[k], log_panel(f_, grid_[k], std::min(r, grid_[k + 1]), opt_.order));
  if (r > grid_.back()) {
    if (!tail_.finite) return tail_;
    // everything minus the part beyond r
    const LogValue t = extrapolate_tail(f_, r);
    const double total = cum_below_.back() + std::log1p(std::exp(tail_.log - cum_below_.back()));
    v.log = total + std::log1p(-std::exp(std::min(0.0, t.log - total)));
  }
  v.rel_error = head_.rel_error * std::exp(std::min(0.0, head_.log - v.log));
  v.diagnostic = head_.diagnostic;
  return v;
}

LogValue RadialCumulative::above(double r) const {
  LogValue v;
  if (!tail_.finite) return tail_;
  if (r > grid_.back()) return extrapolate_tail(f_, r);
  if (r < grid_.front()) {
    if (!head_.finite) return head_;
    const LogValue h = extrapolate_head(f_, r);
    const double total = log_add(cum_below_.back(), tail_.log);
    v.log = total + std::log1p(-std::exp(std::min(0.0, h.log - total)));
    return v;
  }
  const std::size_t k = cell(r);
  v.log = log_add(cum_above_[k + 1], log_panel(f_, std::max(r, grid_[k]), grid_[k + 1], opt_.order));
  v.rel_error = tail_.rel_error * std::exp(std::min(0.0, tail_.log - v.log));
  v.diagnostic = tail_.diagnostic;
  return v;
}

}  // namespace fhardy
