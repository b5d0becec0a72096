#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "solvagen/expected.hpp"

namespace solvagen::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInvalidInput = 2,
  kExitIo = 3,
};

int exit_code_for(ErrorCode code);

struct GridSpec {
  double r_min = 0.0;
  double r_max = 0.0;
  int points = 0;
};

enum class Format { Json, Csv };

// Every field is optional so that a config file and the command line can be
// layered; resolved() fills the defaults.
struct RunConfig {
  std::optional<int> dimension;
  std::optional<int> ell;
  std::optional<int> n_max;
  std::map<std::string, double> params;
  std::optional<GridSpec> grid;
  std::optional<double> tolerance;
  std::optional<Format> format;
  std::optional<std::string> output;
  std::optional<bool> strict;
  std::optional<int> jobs;
};

struct ResolvedConfig {
  int dimension = 3;
  int ell = 0;
  int n_max = 4;
  std::map<std::string, double> params;
  std::optional<GridSpec> grid;
  double tolerance = 1e-5;
  Format format = Format::Json;
  std::optional<std::string> output;
  bool strict = false;
  int jobs = 0;  // 0: hardware concurrency
};

Expected<std::pair<std::string, double>> parse_param(std::string_view text);
Expected<GridSpec> parse_grid(std::string_view text);
Expected<Format> parse_format(std::string_view text);

// key = value lines; '#' starts a comment. Keys: dimension, ell, n_max, tol,
// format, output, grid, strict, jobs, and param.<name>.
Expected<RunConfig> parse_config_text(std::string_view text);
Expected<RunConfig> load_config_file(const std::string& path);

// Fields set in `flags` win over those in `file`; params merge by name.
RunConfig merge(const RunConfig& file, const RunConfig& flags);

Expected<ResolvedConfig> resolve(const RunConfig& cfg);

}  // namespace solvagen::cli
