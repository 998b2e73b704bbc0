#pragma once

// Deterministic integration on the group: Cartesian boxes, polar grids and
// radial ball/complement integrals, each with a two-level error estimate.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "fhardy/expr.hpp"
#include "fhardy/group.hpp"
#include "fhardy/integral.hpp"
#include "fhardy/parallel.hpp"

namespace fhardy {

struct QuadratureScheme {
  int order = 6;              // Gauss-Legendre nodes per panel
  int radial_panels = 8;      // panels across a support annulus
  double per_decade = 2.0;    // geometric panels per decade of radius
  int angular = 0;            // base angular resolution; 0 picks one per dimension
  int cartesian_panels = 16;  // panels per axis
  double r_min_factor = 1e-6; // innermost radius relative to the support
  double r_max_factor = 1e3;  // outermost radius relative to the support
  double rel_tol = 2e-2;      // accepted discretisation error (relative)
  int max_level = 2;          // refinements after the base level
  std::int64_t budget = 4'000'000'000;
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;
  int level = 0;              // set by refined()

  /// Scheme at refinement level `level`: radial densities x2^level, angular x1.5^level.
  QuadratureScheme refined(int level) const;
  void validate() const;
  /// Angular resolution used on a group of the given dimension at this level.
  int angular_nodes(int dim) const;

  friend bool operator==(const QuadratureScheme&, const QuadratureScheme&) = default;
};

using Box = std::vector<std::pair<double, double>>;

/// Composite Gauss rule per axis; error from one panel doubling. An empty box
/// is grown until f is negligible on its boundary.
IntegralResult integrate_cartesian(const std::function<double(const Point&)>& f, Box box,
                                   const QuadratureScheme& scheme, int dim);

struct PolarOptions {
  double scale = 1.0;           // radial range is scale * [r_min_factor, r_max_factor]
  std::vector<double> breaks;   // extra radial panel boundaries
  bool reduced = false;         // integrand invariant under Geometry::rotation_symmetric()
};

/// Integral of f(r, omega) r^(Q-1) dr dsigma(omega) over the whole group.
IntegralResult integrate_polar(const std::function<double(double, const Point&)>& f,
                               const QuadratureScheme& scheme, const Geometry& geom,
                               const PolarOptions& opt = {});

/// Polar integral over the annulus lo <= |x| <= hi with extra panel breaks;
/// lo = 0 starts at 1e-12 hi and adds a constant-shell estimate of the core.
IntegralResult integrate_annulus(const std::function<double(double, const Point&)>& f, double lo,
                                 double hi, const std::vector<double>& breaks,
                                 const QuadratureScheme& scheme, const Geometry& geom,
                                 bool reduced = false);

/// Integrals of w over B(0, radius) and its complement.
IntegralResult ball_integral(const std::function<double(const Point&)>& w, double radius,
                             const QuadratureScheme& scheme, const Geometry& geom);
IntegralResult complement_integral(const std::function<double(const Point&)>& w, double radius,
                                   const QuadratureScheme& scheme, const Geometry& geom);

/// Radial weights reduce to one-dimensional integrals |S| int t^(Q-1) w(t) dt.
IntegralResult ball_integral(const PowerExpr& w, double radius, const Geometry& geom);
IntegralResult complement_integral(const PowerExpr& w, double radius, const Geometry& geom);

/// Radial nodes over [a, b]: geometric panels plus the given breaks.
std::vector<double> radial_breaks(double a, double b, double per_decade,
                                  const std::vector<double>& extra);

}  // namespace fhardy
