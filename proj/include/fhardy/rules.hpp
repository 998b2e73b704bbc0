#pragma once

// One-dimensional quadrature rules: Gauss-Legendre panels, graded panel
// layouts and tanh-sinh for endpoint singularities.

#include <functional>
#include <vector>

namespace fhardy {

struct Node {
  double x;
  double w;
};

using Rule1D = std::vector<Node>;

/// n-point Gauss-Legendre rule on [-1, 1] (cached per n).
const Rule1D& gauss_legendre(int n);

/// Appends the n-point Gauss-Legendre rule mapped to [a, b].
void append_panel(Rule1D& rule, double a, double b, int order);

/// Panel boundaries.
std::vector<double> uniform_breaks(double a, double b, int panels);
/// Log-uniform boundaries on [a, b], 0 < a < b.
std::vector<double> geometric_breaks(double a, double b, double per_decade);
/// Boundaries on [a, b] refined geometrically toward the chosen end(s):
/// the panel next to a graded end has relative width `smallest` and widths
/// double moving inward, joined by uniform panels of width about (b-a)/panels.
std::vector<double> graded_breaks(double a, double b, bool grade_lo, bool grade_hi,
                                  double smallest, int panels);

Rule1D rule_from_breaks(const std::vector<double>& breaks, int order);

/// Tanh-sinh quadrature of f on [a, b] with step 2^-level; tolerant of
/// integrable endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, int level);

}  // namespace fhardy
