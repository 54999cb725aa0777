#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsler/io.hpp"
#include "finsler/oracle/oracle.hpp"
#include "finsler/sampling.hpp"

namespace finsler {

struct CheckOptions {
  std::uint64_t seed = 1;
  /// Regular points per metric.
  int count = 200;
  /// Builtin tags to certify.
  std::vector<std::string> metrics{"bg3", "bg4"};
  /// Replace the derived BG3 torsion and BG4 inverse by their printed
  /// variants; a correct harness must then fail.
  bool inject_erratum = false;
  oracle::OracleConfig oracle;
  SampleConfig sampling;
};

struct PropertyResult {
  std::string metric;
  std::string name;
  int points = 0;
  oracle::ComparisonReport report;
};

/// Verdict on one printed formula against its derived replacement.
struct ErratumFinding {
  std::string name;
  std::string metric;
  std::string printed;
  std::string derived;
  /// True when the derived formula passes and the printed one fails.
  bool confirmed = false;
  std::string verdict;
  io::Json evidence;
};

struct CheckReport {
  CheckOptions options;
  std::vector<PropertyResult> properties;
  std::vector<ErratumFinding> errata;
  bool pass = false;
};

/// Runs every invariant on `count` sampled points per metric plus the three
/// erratum adjudications. Deterministic for a given seed. Throws InvalidInput
/// for count < 1 or an unknown metric tag.
CheckReport run_check(const CheckOptions& options);

io::Json to_json(const CheckReport& report);

}  // namespace finsler
