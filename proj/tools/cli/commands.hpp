#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace qdgate::cli {

enum class Format { Json, Csv };

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 2,
  kExitNumerical = 3,
  kExitMismatch = 4,
};

struct CommandOutput {
  std::string text;  ///< written to --out or stdout
  std::vector<std::pair<std::string, std::string>> side_files;  ///< (path, content)
  int exit_code = kExitOk;
};

CommandOutput cmd_phase(const Json& config, Format format);
CommandOutput cmd_evolve(const Json& config, Format format);
CommandOutput cmd_gate(const Json& config, Format format);
CommandOutput cmd_iswap_schedule(const Json& config, Format format);
CommandOutput cmd_cnot_verify(const Json& config, Format format);
CommandOutput cmd_sweep(const Json& config, Format format);

/// CSV of every (k, m) candidate: k, m, t_invEV, t_fs, v_required_eV,
/// v_residual_eV, fidelity.
std::string timing_grid_csv(const std::vector<TimingSolution>& candidates, double epsilon);

/// Map a library or config failure onto the CLI exit code contract.
int exit_code_for(const std::exception& e);
Json error_json(const std::string& command, const std::exception& e);

}  // namespace qdgate::cli
