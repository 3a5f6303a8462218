#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "cli/config.hpp"

namespace vortexlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitConfigError = 2,
  kExitRuntimeError = 3,
};

struct CommandContext {
  RunConfig config;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  int jobs = 1;
};

int cmd_simulate(const CommandContext& ctx, std::ostream& log);
int cmd_validate(const CommandContext& ctx, std::ostream& log);
int cmd_entropy(const CommandContext& ctx, std::ostream& log);
int cmd_canonical(const CommandContext& ctx, std::ostream& log);
int cmd_nodes(const CommandContext& ctx, std::ostream& log);

/// The validation report: per-check pass/fail with residuals plus
/// reported-only tables. "passed" is true iff every asserted check passes.
nlohmann::ordered_json run_validation(const RunConfig& config, std::uint64_t seed, int jobs);

/// Dispatches by name and converts every failure into an exit code and a
/// single "error:<Kind>: message" line on `err`.
int run_command(const std::string& name, const CommandContext& ctx, std::ostream& log,
                std::ostream& err);

}  // namespace vortexlab::cli
