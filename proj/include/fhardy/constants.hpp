#pragma once

// Admissibility constants D1 (closed forms and numerical suprema), the gates
// built from them and the front constants of the inequalities.

#include <optional>
#include <string>
#include <utility>

#include "fhardy/expr.hpp"
#include "fhardy/functionals.hpp"
#include "fhardy/group.hpp"
#include "fhardy/radial.hpp"

namespace fhardy {

struct ConstantsBundle {
  double d1 = 0.0;
  double gate_value = 0.0;
  std::string gate_name;
  double front_constant = 0.0;  // +inf when the gate fails
  std::optional<std::pair<double, double>> bracket;
  std::string diagnostic;
};

/// sup_r G(r)^eg H(r)^eh with G(r) = int_{|y|>r} g, H(r) = int_{|y|<r} h, both
/// given as log densities in r (including |S| r^(Q-1)). The search covers
/// [1e-4, 1e4] * scale; a maximum on the grid edge is reported in `diagnostic`.
struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  std::string diagnostic;
};
SupResult radial_sup(const LogDensity& g, const LogDensity& h, double eg, double eh, double scale);

/// D1 of the integral Hardy inequality for radial g, h.
SupResult d1_integral_hardy(const PowerExpr& g, const PowerExpr& h, double p, double q,
                            const Geometry& geom, double scale = 1.0);

/// Closed form for g = |x|^beta, h = |x|^alpha; throws ConditionError naming
/// the violated condition.
double d1_power_weights(double alpha, double beta, double p, double q, double Q, double sphere);

/// D1 of the fractional Hardy inequality for a radial weight A.
SupResult d1_frac(const RadialLogWeight& log_A, double p, double s, const Geometry& geom,
                  double scale = 1.0);
/// A = 1: Q (p-1)^(1/p') / (sp + Qp - Q).
double d1_frac_closed(double p, double s, double Q);

/// D1 of the Hardy-Sobolev inequality.
SupResult d1_hs(const PowerExpr& v, const PowerExpr& z, double p, double q, double s,
                const Geometry& geom, double scale = 1.0);

double gate_frac(double d1, double p);                 // D1 p'^(1/p') p^(1/p)
double gate_hs(double d1, double q);                   // D1 q'^(1/q') q^(1/q)
double gate_log_hs(double d1, double p, double q);     // D1 p'^(1/p') p^(1/q)
double gate_nash(double d1, double q);                 // 2^(1/2+1/q) D1

double front_constant_frac(double p, double s, double Q, double c_tri, double sphere, double d1);
double front_constant_hs(double p, double q, double s, double Q, double c_tri, double sphere, double d1);

/// (D1, D1 p'^(1/p') p^(1/q)).
std::pair<double, double> bracket_CH(double d1, double p, double q);

}  // namespace fhardy
