#pragma once

#include <CLI11.hpp>
#include <functional>
#include <string>
#include <vector>

#include "manifest.hpp"

namespace rlm::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kResourceError = 3,
};

struct Command {
  CLI::App* app = nullptr;
  /// Runs after a successful parse; returns the exit code.
  std::function<int(RunManifest&)> run;
  /// Primary output path, if the command has one; the manifest goes next to it.
  std::function<std::string()> primary_output;
};

std::vector<Command> register_commands(CLI::App& root);

/// Option values of a parsed subcommand, keyed by long name.
nlohmann::json collect_params(const CLI::App& app);

}  // namespace rlm::cli
