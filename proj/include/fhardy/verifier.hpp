#pragma once

// Per-theorem verification: hypothesis gates, both sides for every test
// function, and a verdict against the theorem constant with error margins.

#include <cstdint>
#include <string>
#include <vector>

#include "fhardy/constants.hpp"
#include "fhardy/scenario.hpp"

namespace fhardy {

enum class Verdict { pass, inconclusive, violation, not_applicable, error };
std::string to_string(Verdict v);

struct GateResult {
  std::string name;
  double value = 0.0;
  bool pass = false;
  std::string detail;
};

/// One inequality check. Multiplicative records test lhs <= C rhs; additive
/// ones (logarithmic inequalities) test lhs <= rhs, and their ratio is
/// exp(lhs - rhs).
struct Record {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  double front_constant = 1.0;
  double ratio = 0.0;             // lhs / rhs
  double normalized_ratio = 0.0;  // lhs / (C rhs)
  double margin = 0.0;
  bool additive = false;
  Verdict verdict = Verdict::pass;
  std::string message;
};

/// Verdict: pass when lhs <= C rhs up to 1e-12 relative rounding slack,
/// inconclusive when the excess is within margin = lhs_error + C rhs_error,
/// violation beyond that.
Record make_record(std::string id, double lhs, double lhs_error, double rhs, double rhs_error, double C,
                   bool additive = false);

struct VerificationReport {
  Scenario scenario;
  std::vector<GateResult> gates;
  ConstantsBundle constants;
  std::vector<Record> results;
  std::int64_t evaluations = 0;
  double wall_time = 0.0;

  bool applicable() const;
};

/// Theorem constants for the scenario (no integrals of the test functions).
ConstantsBundle compute_constants(const Scenario& sc);

/// Every hypothesis of the scenario's theorem with its value.
std::vector<GateResult> check_admissibility(const Scenario& sc, const ConstantsBundle& c);
std::vector<GateResult> check_admissibility(const Scenario& sc);

VerificationReport verify(const Scenario& sc);
VerificationReport verify_integral_hardy(const Scenario& sc);
VerificationReport verify_radial_hardy(const Scenario& sc);
VerificationReport verify_frac_hardy(const Scenario& sc);
VerificationReport verify_uncertainty(const Scenario& sc);
VerificationReport verify_hs(const Scenario& sc);
VerificationReport verify_log_holder(const Scenario& sc);
VerificationReport verify_log_hs(const Scenario& sc);
VerificationReport verify_nash(const Scenario& sc);

/// Truncated power r^(-(Q-p)/p + eps) on [r0, ratio r0] with the log-ramp
/// width chosen to maximise the radial Hardy quotient.
TestFunction near_extremal(double Q, double p, double eps, double ratio, const QuadratureScheme& scheme,
                           const Geometry& geom);

/// 0 all pass / not applicable, 2 any violation, 1 any error, 3 inconclusive.
int exit_code(const VerificationReport& r);

}  // namespace fhardy
