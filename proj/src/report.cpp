#include "fhardy/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fhardy {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json number(double x) {
  if (!std::isfinite(x)) return format_double(x);
  return x;
}

namespace {

void write(const ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + ordered_json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "\"" + format_double(x) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string write_json(const ordered_json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

ordered_json to_json(const ConstantsBundle& c) {
  ordered_json j;
  j["d1"] = number(c.d1);
  j["gate_name"] = c.gate_name;
  j["gate_value"] = number(c.gate_value);
  j["front_constant"] = number(c.front_constant);
  if (c.bracket) j["bracket"] = ordered_json::array({number(c.bracket->first), number(c.bracket->second)});
  j["diagnostic"] = c.diagnostic;
  return j;
}

ordered_json to_json(const GateResult& g) {
  ordered_json j;
  j["name"] = g.name;
  j["value"] = number(g.value);
  j["pass"] = g.pass;
  j["detail"] = g.detail;
  return j;
}

ordered_json to_json(const Record& r) {
  ordered_json j;
  j["id"] = r.id;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["lhs_error"] = number(r.lhs_error);
  j["rhs_error"] = number(r.rhs_error);
  j["front_constant"] = number(r.front_constant);
  j["ratio"] = number(r.ratio);
  j["normalized_ratio"] = number(r.normalized_ratio);
  j["margin"] = number(r.margin);
  j["form"] = r.additive ? "additive" : "multiplicative";
  j["verdict"] = to_string(r.verdict);
  j["message"] = r.message;
  return j;
}

ordered_json to_json(const SearchResult& r) {
  ordered_json j;
  j["family"] = r.family;
  j["best_ratio"] = number(r.best_ratio);
  j["best_normalized_ratio"] = number(r.best_normalized_ratio);
  ordered_json params = ordered_json::array();
  for (double x : r.params) params.push_back(number(x));
  j["params"] = params;
  ordered_json bounds = ordered_json::array();
  for (const auto& [lo, hi] : r.bounds) bounds.push_back({number(lo), number(hi)});
  j["bounds"] = bounds;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  j["message"] = r.message;
  ordered_json trace = ordered_json::array();
  for (const auto& t : r.trace) {
    ordered_json e;
    e["restart"] = t.restart;
    e["iteration"] = t.iteration;
    e["evaluations"] = t.evaluations;
    e["best"] = number(t.best);
    trace.push_back(e);
  }
  j["trace"] = trace;
  return j;
}

ordered_json report_json(const VerificationReport& rep, bool timing) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = to_json(rep.scenario);
  ordered_json gates = ordered_json::array();
  for (const auto& g : rep.gates) gates.push_back(to_json(g));
  j["gates"] = gates;
  j["applicable"] = rep.applicable();
  j["constants"] = to_json(rep.constants);
  ordered_json results = ordered_json::array();
  for (const auto& r : rep.results) results.push_back(to_json(r));
  j["results"] = results;
  ordered_json meta;
  meta["version"] = kVersion;
  meta["evaluations"] = rep.evaluations;
  meta["function_class"] = "Lipschitz off the origin, compact support in an annulus";
  if (timing) meta["wall_time"] = rep.wall_time;
  j["meta"] = meta;
  return j;
}

std::string results_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "id,lhs,rhs,lhs_error,rhs_error,front_constant,ratio,normalized_ratio,margin,form,verdict,message\n";
  for (const auto& r : rep.results) {
    os << csv_field(r.id) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
       << format_double(r.lhs_error) << ',' << format_double(r.rhs_error) << ',' << format_double(r.front_constant)
       << ',' << format_double(r.ratio) << ',' << format_double(r.normalized_ratio) << ','
       << format_double(r.margin) << ',' << (r.additive ? "additive" : "multiplicative") << ','
       << to_string(r.verdict) << ',' << csv_field(r.message) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << axis << ",gate_value,front_constant,worst_ratio,status,exit_code\n";
  for (const auto& r : rows)
    os << format_double(r.axis_value) << ',' << format_double(r.gate_value) << ','
       << format_double(r.front_constant) << ',' << format_double(r.worst_ratio) << ','
       << (r.applicable ? "applicable" : "not_applicable") << ',' << r.exit_code << '\n';
  return os.str();
}

}  // namespace fhardy
