#pragma once

#include <optional>
#include <string>

#include "config.hpp"

namespace solvagen::cli {

// What a subcommand produced: the document for stdout/--output, a message for
// stderr, and the process exit code.
struct CommandOutput {
  int code = kExitOk;
  std::string body;
  std::string message;
};

CommandOutput cmd_list(const ResolvedConfig& cfg);
CommandOutput cmd_info(const std::string& id, const ResolvedConfig& cfg);
CommandOutput cmd_energies(const std::string& id, const ResolvedConfig& cfg);
CommandOutput cmd_sample(const std::string& id, const ResolvedConfig& cfg);

// Either one id, or every catalog entry when `id` is empty. Under --all, l is
// forced to 0 for systems that do not take it and only the parameters an
// entry knows are applied to it.
CommandOutput cmd_verify(const std::optional<std::string>& id, const ResolvedConfig& cfg);

// Symbolic Schwartzian of g(r) against a Richardson-extrapolated
// finite-difference oracle; 50 points on [0.1, 2] unless a grid is given.
CommandOutput cmd_schwartzian_check(const std::string& g, const ResolvedConfig& cfg, double tolerance);

}  // namespace solvagen::cli
