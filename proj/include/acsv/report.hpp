#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "acsv/asym.hpp"
#include "acsv/oracle.hpp"

namespace acsv {

struct JobSpec {
  std::string numerator = "1";
  std::string denominator;
  std::optional<std::pair<long, long>> direction;  // set exactly when not decomposing
  bool decompose = false;
  bool analyze = true;    // decompose mode: false stops after the partition
  long precision = kDefaultPrec;
  long max_precision = kMaxPrec;
  long oracle = 0;        // 0 skips the oracle
  long max_steps = 100000;
  size_t max_cells = kDefaultMaxCells;
  bool timestamp = true;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitAssumption = 2, kExitCap = 3, kExitFailure = 4 };

int exit_code_for(ErrorKind k);

struct JobOutcome {
  nlohmann::json report;
  std::string text;
  int exit_code = kExitOk;
};

// Runs one job; errors become part of the report and select the exit code.
JobOutcome run_job(const JobSpec& spec);

// "mid ± rad" with the printing error folded into the radius.
std::string format_ball(const ComplexBall& b, int digits = 15);
std::string format_ball(const RealBall& b, int digits = 15);

}  // namespace acsv
