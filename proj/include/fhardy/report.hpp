#pragma once

// Report documents: JSON with 17 significant digits and "inf"/"nan" strings
// for non-finite values, plus CSV flattenings.

#include <string>
#include <vector>

#include <json.hpp>

#include "fhardy/search.hpp"
#include "fhardy/verifier.hpp"

namespace fhardy {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

/// Deterministic text form of a JSON value: two-space indentation, insertion
/// order, every float as %.17g, infinities and NaN as strings.
std::string write_json(const nlohmann::ordered_json& j);

/// A double as it appears in reports ("inf", "-inf", "nan" or a number).
nlohmann::ordered_json number(double x);

nlohmann::ordered_json to_json(const ConstantsBundle& c);
nlohmann::ordered_json to_json(const GateResult& g);
nlohmann::ordered_json to_json(const Record& r);
nlohmann::ordered_json to_json(const SearchResult& r);

/// Full report; wall_time is included only when `timing` is set so that
/// reports stay byte-identical across runs.
nlohmann::ordered_json report_json(const VerificationReport& rep, bool timing);

/// One header line and one row per result record.
std::string results_csv(const VerificationReport& rep);

struct SweepRow {
  double axis_value = 0.0;
  double gate_value = 0.0;
  double front_constant = 0.0;
  double worst_ratio = 0.0;  // largest normalised ratio; nan when nothing was evaluated
  bool applicable = false;
  int exit_code = 0;
};
std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows);

/// %.17g, or inf / -inf / nan.
std::string format_double(double x);

}  // namespace fhardy
