#pragma once

// Extremal search: Nelder-Mead over a parametric test-function family,
// maximising the normalised ratio lhs / (C rhs) of a scenario's inequality.

#include <cstdint>
#include <string>
#include <vector>

#include "fhardy/scenario.hpp"

namespace fhardy {

struct TraceEntry {
  int restart = 0;
  int iteration = 0;
  std::int64_t evaluations = 0;
  double best = 0.0;  // best normalised ratio so far
};

struct SearchResult {
  std::string family;
  double best_ratio = 0.0;             // lhs / rhs
  double best_normalized_ratio = 0.0;  // lhs / (C rhs)
  std::vector<double> params;
  std::vector<std::pair<double, double>> bounds;
  std::vector<TraceEntry> trace;
  std::int64_t evaluations = 0;
  bool converged = false;
  std::string message;
};

/// Default box of a family: tent (r0, peak, R), truncated_power (kappa, ramp)
/// around the critical exponent -(Q-p)/p, gaussian_ring (r0, R, sigma).
std::vector<std::pair<double, double>> default_bounds(const std::string& family, const Scenario& sc);

/// Member of the family; throws ConfigError for parameters outside its domain
/// (e.g. tent with peak outside (r0, R)).
TestFunction family_member(const std::string& family, const std::vector<double>& params, const Scenario& sc);

/// Deterministic given sc.seed. `budget` caps objective evaluations; hitting
/// it returns the best point so far with converged = false.
SearchResult extremal_search(const Scenario& sc, std::int64_t budget = 400);

}  // namespace fhardy
