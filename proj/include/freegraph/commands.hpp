#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace freegraph {

/// Everything a run depends on. Options that a subcommand does not use are ignored
/// and not echoed.
struct RunConfig {
  std::string command;
  std::string graph_path;
  std::string word;
  std::string expr;
  std::string vertex;
  int max_order = 8;
  int degree = 6;
  int depth = 5;
  double eta = 1e-3;
  int grid_points = 2000;
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  int max_dz = 4;
  int max_dg = 4;
  double tol = 1e-9;
  double commutator_tol = 1e-12;
  std::uint64_t seed = 0;
  int samples = 100;
  int n = 100;
  std::vector<double> ratios{1.0, 2.0};
  int max_moment = 4;
  int bins = 50;
  int random_polys = 100;
  bool diagonal = false;
  bool exact = false;
  bool calculus = false;
  bool check = false;
  std::string density_path;
  std::string hist_path;
};

/// Sets an option from its command-line spelling (`max-order`, `eta`, ...).
/// Throws Error(invalid_argument) for unknown keys or malformed values.
void set_option(RunConfig& cfg, const std::string& key, const std::string& value);

struct RunResult {
  int exit_code = 0;  ///< 0 ok, 1 input error, 2 failed consistency check
  std::string text;
  std::vector<std::pair<std::string, std::string>> files;  ///< (path, content) to be written by the caller
  std::string error;
  int error_code = 0;  ///< ErrorCode value when exit_code is 1
};

/// Dispatches classify, trace, moments, law, series, fock-check or wishart.
/// Library errors become exit code 1 with `error` set; nothing is written to disk.
RunResult run(const RunConfig& cfg);

}  // namespace freegraph
