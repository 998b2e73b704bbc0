#pragma once

// Command-line front end: verify, sweep, constants and search subcommands.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fhardy {

struct CliOptions {
  std::string scenario;
  std::string out_dir;  // empty: scenario output.path, else stdout
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  std::string format;   // json | csv; empty: scenario output.formats
  bool timing = false;
};

int run_verify(const CliOptions& opt, std::ostream& out, std::ostream& err);
int run_sweep(const CliOptions& opt, const std::string& axis, const std::vector<double>& grid, std::ostream& out,
              std::ostream& err);
int run_constants(const CliOptions& opt, std::ostream& out, std::ostream& err);
int run_search(const CliOptions& opt, std::ostream& out, std::ostream& err);

/// "a,b,c" or "lo:hi:n" (n evenly spaced points including both ends).
std::vector<double> parse_grid(const std::string& text);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fhardy
