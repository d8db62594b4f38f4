#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rotosc/run_config.hpp"

namespace rotosc {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitVerification = 4,
};

/// Validates, dispatches and maps failures onto the exit-code contract.
/// Progress and summaries go to `log`; data files go to config.output_dir.
int run_command(const RunConfig& config, std::ostream& log);

int cmd_spectrum(const RunConfig& config, std::ostream& log);
int cmd_projnorms(const RunConfig& config, std::ostream& log);
int cmd_pseudo(const RunConfig& config, std::ostream& log);
int cmd_rays(const RunConfig& config, std::ostream& log);
int cmd_nrlimit(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);

struct CheckGroup {
  std::string name;
  bool pass = true;
  std::string detail;
};

/// Every module's invariant suite at the configured theta, mass and basis size.
std::vector<CheckGroup> run_verification(const RunConfig& config);

}  // namespace rotosc
