#pragma once

// One-dimensional radial integrals of positive densities, evaluated in the
// log domain so that power weights spanning many decades stay accurate.

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fhardy {

/// log of a positive density on (0, inf); -inf where the density vanishes.
using LogDensity = std::function<double(double)>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b);

/// log of an integral, flagged infinite when a head or tail diverges.
struct LogValue {
  double log = kNegInf;
  double rel_error = 0.0;
  bool finite = true;
  std::string diagnostic;

  double value() const;
};

/// log of the integral of exp(f) over [a, b] with one n-point Gauss panel.
double log_panel(const LogDensity& f, double a, double b, int order);

/// log of the integral of exp(f) over [a, b] with geometric panels.
double log_integrate(const LogDensity& f, double a, double b, double per_decade = 3.0, int order = 16);

/// log of the integral of exp(f) over (0, r) and (r, inf), covering
/// `decades` decades numerically before extrapolating.
LogValue log_integral_below(const LogDensity& f, double r, double decades = 14.0);
LogValue log_integral_above(const LogDensity& f, double r, double decades = 14.0);

/// Cumulative integrals of exp(f) from 0 and to infinity on a geometric grid
/// spanning [scale*10^-decades, scale*10^decades]; the pieces beyond the grid
/// are extrapolated as power laws.
class RadialCumulative {
 public:
  struct Options {
    double decades = 14.0;
    int panels_per_decade = 3;
    int order = 16;
  };

  RadialCumulative(LogDensity f, double scale);
  RadialCumulative(LogDensity f, double scale, Options opt);

  LogValue below(double r) const;  // log of the integral over (0, r)
  LogValue above(double r) const;  // log of the integral over (r, inf)

  double lo() const { return grid_.front(); }
  double hi() const { return grid_.back(); }

 private:
  std::size_t cell(double r) const;

  LogDensity f_;
  Options opt_;
  std::vector<double> grid_;
  std::vector<double> cum_below_;  // log integral over (0, grid_[k])
  std::vector<double> cum_above_;  // log integral over (grid_[k], inf)
  LogValue head_;
  LogValue tail_;
};

/// Power-law extrapolation of the integral of exp(f) over (0, t) (head) or
/// (t, inf) (tail) from samples at t, t*10, t*100 (resp. t, t/10, t/100).
LogValue extrapolate_head(const LogDensity& f, double t);
LogValue extrapolate_tail(const LogDensity& f, double t);

}  // namespace fhardy
