#pragma once

// Singular double integrals of Gagliardo type. Both entry points reduce to
//   int_y  J(y)^e v(|y|) dy,   J(y) = int_x |u(x)-u(y)|^p a(x,y) |y^-1 x|^(-Q-sp) dx,
// with J evaluated through x = y.w in polar coordinates for w near y and by
// polar quadrature over the support of u for y far from it.

#include "fhardy/expr.hpp"
#include "fhardy/group.hpp"
#include "fhardy/integral.hpp"
#include "fhardy/quadrature.hpp"
#include "fhardy/test_function.hpp"

namespace fhardy {

/// int int |u(x)-u(y)|^p a(x,y) / |y^-1 x|^(Q+sp) dx dy.
IntegralResult integrate_gagliardo(const TestFunction& u, double p, double s, const PowerExpr& a,
                                   const QuadratureScheme& scheme, const Geometry& geom);

/// int ( int |u(x)-u(y)|^p z(x) / |y^-1 x|^(Q+sp) dx )^(q/p) v(y) dy, without the outer 1/q root.
IntegralResult nested_hs_integral(const TestFunction& u, const PowerExpr& z, const PowerExpr& v,
                                  double p, double q, double s, const QuadratureScheme& scheme,
                                  const Geometry& geom);

}  // namespace fhardy
