#include "fhardy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fhardy/error.hpp"
#include "fhardy/report.hpp"
#include "fhardy/scenario.hpp"
#include "fhardy/search.hpp"
#include "fhardy/verifier.hpp"

namespace fhardy {

namespace fs = std::filesystem;

namespace {

Scenario load(const CliOptions& opt) {
  Scenario sc = load_scenario(opt.scenario);
  if (opt.seed) {
    sc.seed = *opt.seed;
    sc.scheme.seed = *opt.seed;
  }
  return sc;
}

std::vector<std::string> formats(const CliOptions& opt, const Scenario& sc) {
  if (!opt.format.empty()) return {opt.format};
  return sc.output.formats.empty() ? std::vector<std::string>{"json"} : sc.output.formats;
}

std::string out_dir(const CliOptions& opt, const Scenario& sc) {
  return opt.out_dir.empty() ? sc.output.path : opt.out_dir;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
}

// the report in every requested format, to files under dir or to out
void emit(const VerificationReport& rep, const CliOptions& opt, const std::string& dir, const std::string& stem,
          std::ostream& out) {
  for (const auto& fmt : formats(opt, rep.scenario)) {
    std::string text;
    if (fmt == "json")
      text = write_json(report_json(rep, opt.timing));
    else if (fmt == "csv")
      text = results_csv(rep);
    else
      throw InputError("unknown format '" + fmt + "' (json or csv)");
    if (dir.empty())
      out << text;
    else
      write_file(fs::path(dir) / (stem + "." + fmt), text);
  }
}

// verdict precedence shared by all subcommands: violation, error, inconclusive
int combine(int a, int b) {
  auto rank = [](int c) { return c == 2 ? 3 : c == 1 ? 2 : c == 3 ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  auto num = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw InputError("bad grid value '" + t + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw InputError("bad grid value '" + t + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string t; std::getline(ss, t, ':');) parts.push_back(t);
    if (parts.size() != 3) throw InputError("grid range must be lo:hi:n");
    const double lo = num(parts[0]);
    const double hi = num(parts[1]);
    const double n = num(parts[2]);
    if (n < 0 || n != std::floor(n)) throw InputError("grid point count must be a nonnegative integer");
    const int k = static_cast<int>(n);
    for (int i = 0; i < k; ++i) g.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
    return g;
  }
  std::stringstream ss(text);
  for (std::string t; std::getline(ss, t, ',');)
    if (!t.empty()) g.push_back(num(t));
  return g;
}

int run_verify(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario sc = load(opt);
    if (opt.budget) sc.scheme.budget = *opt.budget;
    const VerificationReport rep = verify(sc);
    emit(rep, opt, out_dir(opt, sc), "report", out);
    for (const auto& r : rep.results)
      if (r.verdict == Verdict::error) err << "error in '" << r.id << "': " << r.message << '\n';
    return exit_code(rep);
  });
}

int run_sweep(const CliOptions& opt, const std::string& axis, const std::vector<double>& grid, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    if (axis != "p" && axis != "q" && axis != "s") throw InputError("sweep axis must be p, q or s");
    if (grid.empty()) throw InputError("empty sweep grid");
    Scenario base = load(opt);
    if (opt.budget) base.scheme.budget = *opt.budget;
    const std::string dir = out_dir(opt, base);
    std::vector<SweepRow> rows;
    int code = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Scenario sc = base;
      (axis == "p" ? sc.p : axis == "q" ? sc.q : sc.s) = grid[i];
      SweepRow row;
      row.axis_value = grid[i];
      row.worst_ratio = std::nan("");
      try {
        // re-validate the modified scenario
        sc = parse_scenario(to_json(sc).dump());
        const VerificationReport rep = verify(sc);
        row.gate_value = rep.constants.gate_value;
        row.front_constant = rep.constants.front_constant;
        row.applicable = rep.applicable();
        for (const auto& r : rep.results)
          if (r.verdict != Verdict::error && r.verdict != Verdict::not_applicable && !std::isnan(r.normalized_ratio))
            row.worst_ratio = std::isnan(row.worst_ratio) ? r.normalized_ratio
                                                          : std::max(row.worst_ratio, r.normalized_ratio);
        row.exit_code = exit_code(rep);
        if (!dir.empty()) emit(rep, opt, dir, "point_" + std::to_string(i), out);
      } catch (const Error& e) {
        err << "error at " << axis << "=" << format_double(grid[i]) << ": " << e.what() << '\n';
        row.gate_value = std::nan("");
        row.front_constant = std::nan("");
        row.exit_code = 1;
      }
      code = combine(code, row.exit_code);
      rows.push_back(row);
    }
    const std::string summary = sweep_csv(axis, rows);
    if (dir.empty())
      out << summary;
    else
      write_file(fs::path(dir) / "summary.csv", summary);
    return code;
  });
}

int run_constants(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load(opt);
    out << write_json(to_json(compute_constants(sc)));
    return 0;
  });
}

int run_search(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load(opt);
    const SearchResult res = extremal_search(sc, opt.budget.value_or(400));
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["search"] = to_json(res);
    int code = 0;
    if (!res.params.empty()) {
      // re-verify the best member so its verdict carries the usual margins
      Scenario best = sc;
      best.extremal.epsilons.clear();
      best.corpus = {family_member(res.family, res.params, sc)};
      const VerificationReport rep = verify(best);
      j["verification"] = to_json(rep.results.front());
      code = exit_code(rep);
    }
    const std::string text = write_json(j);
    const std::string dir = out_dir(opt, sc);
    if (dir.empty())
      out << text;
    else
      write_file(fs::path(dir) / "search.json", text);
    return code;
  });
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of Hardy-type inequalities on homogeneous groups"};
  app.require_subcommand(1);
  CliOptions opt;
  std::string axis;
  std::string grid_text;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario, "scenario file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory (default: scenario output.path, else stdout)");
    sub->add_option("--seed", seed, "override the scenario seed");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", opt.timing, "include wall time in reports");
  };
  auto* verify_cmd = app.add_subcommand("verify", "verify one scenario");
  common(verify_cmd);
  verify_cmd->add_option("--budget", budget, "quadrature evaluation budget");
  auto* sweep_cmd = app.add_subcommand("sweep", "verify over a grid of one exponent");
  common(sweep_cmd);
  sweep_cmd->add_option("--budget", budget, "quadrature evaluation budget");
  sweep_cmd->add_option("--axis", axis, "p, q or s")->required()->check(CLI::IsMember({"p", "q", "s"}));
  sweep_cmd->add_option("--grid", grid_text, "comma list or lo:hi:n")->required();
  auto* constants_cmd = app.add_subcommand("constants", "print the theorem constants");
  common(constants_cmd);
  auto* search_cmd = app.add_subcommand("search", "search a test-function family for large ratios");
  common(search_cmd);
  search_cmd->add_option("--budget", budget, "objective evaluations (default 400)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) opt.seed = seed;
    if (sub->get_option_no_throw("--budget") && sub->count("--budget")) opt.budget = budget;
  }
  if (*verify_cmd) return run_verify(opt, out, err);
  if (*sweep_cmd) {
    std::vector<double> grid;
    try {
      grid = parse_grid(grid_text);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
    return run_sweep(opt, axis, grid, out, err);
  }
  if (*constants_cmd) return run_constants(opt, out, err);
  return run_search(opt, out, err);
}

}  // namespace fhardy
