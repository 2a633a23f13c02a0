#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "su12/cli/config.hpp"
#include "su12/lie.hpp"

namespace su12::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitGuard = 3,
};

struct RunOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  /// Empty: figures go to the working directory, other commands write no files.
  std::string out_dir;
  bool timestamp = true;
};

/// Default parameters of a subcommand ("figure" needs the figure number).
/// Throws ConfigError for an unknown command or figure.
ParamSet default_params(const std::string& command, int figure = 0);

/// Defaults, then the config file, then the overrides, then balanced gains.
ParamSet resolve_params(const std::string& command, const RunOptions& opts, int figure = 0);

int cmd_lie_verify(const RunOptions& opts, std::ostream& out);
int cmd_lie_verify(const StructureConstantTable& table, std::uint64_t seed, std::ostream& out);
int cmd_sensitivity(const RunOptions& opts, std::ostream& out);
int cmd_optimize(const RunOptions& opts, std::ostream& out);
int cmd_figure(int figure, const RunOptions& opts, std::ostream& out);
int cmd_oracle_check(const RunOptions& opts, std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace su12::cli
