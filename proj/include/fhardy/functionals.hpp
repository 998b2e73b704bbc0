#pragma once

// Both sides of the inequalities: derived weights, weighted norms, the nested
// Hardy-Sobolev seminorm, the entropy term and the radial derivative norm.

#include <functional>

#include "fhardy/expr.hpp"
#include "fhardy/group.hpp"
#include "fhardy/integral.hpp"
#include "fhardy/quadrature.hpp"
#include "fhardy/test_function.hpp"

namespace fhardy {

/// log A(r) of a radial weight.
using RadialLogWeight = std::function<double(double)>;

/// log of the ball average (1/|B(0,r)|) int_B f(|y|) dy of a radial expression.
double log_ball_average(const PowerExpr& f, double r, const Geometry& geom);

/// Weight A of the fractional Hardy inequality for a(x, y) depending on |x|
/// and |y| only; a constant factor of a passes through exactly.
RadialLogWeight frac_weight(const PowerExpr& a, double p, const Geometry& geom);

/// A(x) = ((1/|B|) int_{B(0,|x|)} a^(1-p')(x, y) dy)^(1-p), any admissible a.
double weight_A_frac(const PowerExpr& a, const Point& x, double p, const QuadratureScheme& scheme,
                     const Geometry& geom);

/// C(r) = int_{B(0,r)} v.
double weight_C(const PowerExpr& v, double r, const Geometry& geom);

/// Weight A of the Hardy-Sobolev inequality built from v and z.
RadialLogWeight hs_weight(const PowerExpr& v, const PowerExpr& z, double p, double q,
                          const Geometry& geom);
double weight_A_hs(const PowerExpr& v, const PowerExpr& z, const Point& x, double p, double q,
                   const Geometry& geom);

/// int w^k and int w^k log w for w = A^(1/root) |u| / |x|^s (A = 1 when
/// log_A is empty); t log t is extended by 0 where w vanishes.
struct Moments {
  IntegralResult moment;
  IntegralResult log_moment;
};
Moments power_moments(const TestFunction& u, const RadialLogWeight& log_A, double root, double s,
                      double k, const QuadratureScheme& scheme, const Geometry& geom);

/// int A |u|^p / |x|^(sp), without the 1/p root.
IntegralResult weighted_lhs(const TestFunction& u, const RadialLogWeight& log_A, double s, double p,
                            const QuadratureScheme& scheme, const Geometry& geom);

/// The Hardy-Sobolev right-hand side including the outer 1/q root.
IntegralResult nested_hs_rhs(const TestFunction& u, const PowerExpr& z, const PowerExpr& v, double p,
                             double q, double s, const QuadratureScheme& scheme, const Geometry& geom);

/// int (w^p / |w|_p^p) log(w^p / |w|_p^p) for w = A^(1/q) |u| / |x|^s,
/// together with |w|_p^p and |w|_q^q.
struct Entropy {
  double value = 0.0;
  double error = 0.0;
  IntegralResult norm_p;  // int w^p
  IntegralResult norm_q;  // int w^q
};
Entropy entropy_term(const TestFunction& u, const RadialLogWeight& log_A, double s, double p, double q,
                     const QuadratureScheme& scheme, const Geometry& geom);

/// (|S| int |phi'(r)|^p r^(Q-1) dr)^(1/p) for radial u.
IntegralResult radial_derivative_norm(const TestFunction& u, double p, const QuadratureScheme& scheme,
                                      const Geometry& geom);
/// (|S| int |phi(r)|^p r^(Q-1-p) dr)^(1/p), the left side of the radial Hardy inequality.
IntegralResult radial_quotient_norm(const TestFunction& u, double p, const QuadratureScheme& scheme,
                                    const Geometry& geom);

/// (int F(|x|)^q g(x) dx)^(1/q) with F(r) = int_{B(0,r)} |f|, for radial g.
IntegralResult integral_hardy_lhs(const TestFunction& f, const PowerExpr& g, double q,
                                  const QuadratureScheme& scheme, const Geometry& geom);
/// (int |f|^p h dx)^(1/p) for radial h.
IntegralResult weighted_norm(const TestFunction& f, const PowerExpr& h, double p,
                             const QuadratureScheme& scheme, const Geometry& geom);

/// Error of I^e given the error of I.
double power_error(double value, double error, double e);

}  // namespace fhardy
