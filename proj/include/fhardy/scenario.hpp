#pragma once

// Scenario files: a JSON document naming the group, exponents, weights, test
// functions and quadrature settings of one verification run.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fhardy/expr.hpp"
#include "fhardy/group.hpp"
#include "fhardy/quadrature.hpp"
#include "fhardy/test_function.hpp"

namespace fhardy {

enum class Theorem {
  integral_hardy,
  radial_hardy,
  frac_hardy,
  uncertainty,
  hardy_sobolev,
  log_holder,
  log_hs,
  nash
};

std::string to_string(Theorem t);
Theorem parse_theorem(const std::string& name);

struct WeightSpec {
  PowerExpr a;  // frac_hardy weight a(x, y)
  PowerExpr v;  // Hardy-Sobolev weights
  PowerExpr z;
  std::optional<PowerExpr> g;  // integral Hardy weights
  std::optional<PowerExpr> h;
  std::optional<double> alpha;  // power-weight shortcut h = |x|^alpha, g = |x|^beta
  std::optional<double> beta;

  /// g (or |x|^beta); throws ConfigError when neither is given.
  PowerExpr g_expr() const;
  PowerExpr h_expr() const;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

struct ExtremalSpec {
  std::vector<double> epsilons{0.2, 0.1, 0.05};
  double ratio_R_r0 = 1e4;

  friend bool operator==(const ExtremalSpec&, const ExtremalSpec&) = default;
};

struct SearchSpec {
  std::string family = "tent";  // tent | truncated_power | gaussian_ring
  int iterations = 40;
  int restarts = 2;
  std::vector<std::pair<double, double>> bounds;  // empty: family defaults

  friend bool operator==(const SearchSpec&, const SearchSpec&) = default;
};

struct OutputSpec {
  std::string path;
  std::vector<std::string> formats{"json"};

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
  Theorem theorem = Theorem::frac_hardy;
  std::uint64_t seed = 0;
  std::string group_name = "euclidean";
  GroupSpec group;
  NormKind norm = NormKind::euclidean;
  double p = 2.0;
  double q = 2.0;
  double s = 0.5;
  WeightSpec weights;
  std::vector<TestFunction> corpus;
  QuadratureScheme scheme;
  ExtremalSpec extremal;
  SearchSpec search;
  std::optional<double> front_override;  // replaces the theorem constant in verdicts
  OutputSpec output;

  Geometry geometry() const { return Geometry(group, norm); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates a scenario. Syntax errors report line and column;
/// unknown keys and non-finite numbers are rejected (InputError); semantic
/// problems raise ConfigError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Canonical JSON form; parse_scenario(to_json(sc).dump()) == sc.
nlohmann::ordered_json to_json(const Scenario& sc);

}  // namespace fhardy
