#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "finsler/check.hpp"
#include "finsler/io.hpp"

namespace finsler::cli {

enum ExitCode : int { kSuccess = 0, kDomainFailure = 1, kInvariantFailure = 2, kInputError = 3 };

struct CommandResult {
  io::Json json;
  int exit_code = kSuccess;
};

/// Canonical polynomial form of a metric definition.
io::Json cmd_expand(const io::MetricDefinition& metric);

/// request = {"metric": .., "points": [[..], ..], "outputs": [..], "kappa": ..}.
/// Outputs default to everything except "einstein", which is added when kappa
/// is present. Throws Error for malformed requests.
CommandResult cmd_eval(const io::Json& request);

CommandResult cmd_check(const CheckOptions& options);

/// Geometry dossier at one point; kappa adds the Einstein residual.
CommandResult cmd_report(const io::MetricDefinition& metric, const Direction& y, std::optional<double> kappa);

/// Plain-text rendering of a report dossier.
std::string render_report(const io::Json& dossier);

/// Full command line: parses argv, runs the subcommand, writes to out/err and
/// returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finsler::cli
