// Batch command-line front end: verification suite, sweeps, evolution and
// oscillation tables.
#pragma once

#include "kkbar/braid_ybx.hpp"
#include "kkbar/phenomenology.hpp"
#include "kkbar/table.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kkbar::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kConfigError = 2 };

enum class Command { verify, bell, evolve, sweep_phi, oscillate, rho_report };
enum class Format { csv, json };

const char* to_string(Command c);

struct RunConfig {
  Command command = Command::verify;
  Sign sign = Sign::plus;
  double phi = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  double t_max = 12.0;
  int steps = 500;
  int grid = 9;
  double gamma_s = 1.0;
  double gamma_l = 0.00175;
  double dm = 0.474;
  Format format = Format::csv;
  std::string out;  // empty: standard output
  std::uint64_t seed = 20240229;
  std::optional<double> tol;  // replaces every non-exact verify tolerance
  bool uncorrected_b = false;
  std::string state = "KK";
  std::vector<double> amplitudes;  // re0,im0,...,re3,im3; overrides `state`

  /// Throws ValidationError on a bad grid, tolerance or parameter set.
  void validate() const;
  KaonParams kaon_params() const;
};

struct CommandResult {
  Table table;
  std::vector<std::string> summary;  // human-readable lines
  int exit_code = kSuccess;
};

CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_bell(const RunConfig& config);
CommandResult cmd_evolve(const RunConfig& config);
CommandResult cmd_sweep_phi(const RunConfig& config);
CommandResult cmd_oscillate(const RunConfig& config);
CommandResult cmd_rho_report(const RunConfig& config);

CommandResult dispatch(const RunConfig& config);

/// Parses argv (flags override a --config file), runs the command, writes the
/// table to --out or `out`, the summary to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kkbar::cli
