#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisyevo/harness.hpp"

namespace noisyevo {

// Command-line contract violation; carries the message shown on stderr.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CommandKind {
  run,
  sweep_variance,
  sweep_n,
  verify_theory,
  export_raw,
  help
};

struct CliCommand {
  CommandKind kind = CommandKind::help;
  ExperimentConfig config;
  std::vector<double> grid;          // sweeps only
  std::optional<std::string> out;    // --out
  std::uint64_t theory_seed = 12345; // verify-theory Monte Carlo seed
  std::string help_text;             // kind == help
};

// Parses argv into a command. Throws UsageError on unknown flags, missing
// required values, or conflicting manual and automatic sizing.
CliCommand parse_cli(int argc, const char* const* argv);

// Executes a parsed command. Returns the process exit code:
// 0 success, 1 usage error, 2 runtime error, 3 theory-check failure.
int execute_command(const CliCommand& command, std::ostream& out,
                    std::ostream& err);

// parse + execute with the exit-code mapping above.
int cli_main(int argc, const char* const* argv);

}  // namespace noisyevo
