// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Subcommand entry points shared by the CLI binary and the test suites.
// Each takes a parsed Config, validates it against its key schema, runs the
// relevant pipeline and renders a deterministic report.

#ifndef REGVAR_COMMANDS_HPP
#define REGVAR_COMMANDS_HPP

#include <cstdint>
#include <string>

#include "regvar/config.hpp"

namespace regvar::cli {

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string format = "json";  // "json" or "text"
};

struct CommandResult {
  std::string report;
  int exit_code = 0;  // 0 ok; 2 config; 3 non-convergent; 4 trivial kernel;
                      // 5 empty anchors; 6 data error
};

CommandResult cmd_analyze(const Config& cfg, const CommonOptions& opt);
CommandResult cmd_verify_fe(const Config& cfg, const CommonOptions& opt);
CommandResult cmd_esslim(const Config& cfg, const CommonOptions& opt);
CommandResult cmd_sequences(const Config& cfg, const CommonOptions& opt);
CommandResult cmd_phi(const Config& cfg, const CommonOptions& opt);
CommandResult cmd_table(const Config& cfg, const CommonOptions& opt);

/// Dispatch by subcommand name; unknown names are config errors.
CommandResult run_command(const std::string& name, const Config& cfg,
                          const CommonOptions& opt);

}  // namespace regvar::cli

#endif  // REGVAR_COMMANDS_HPP
