#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "acsv/parse.hpp"
#include "acsv/report.hpp"

int main(int argc, char** argv) {
  acsv::JobSpec spec;
  std::string direction, json_path;
  CLI::App app{"Certified saddle-point asymptotics for bivariate rational generating functions P/Q"};
  app.add_option("--num", spec.numerator, "numerator P (default 1)");
  app.add_option("--den", spec.denominator, "denominator Q")->required();
  auto* dir = app.add_option("--direction", direction, "direction R:S");
  auto* dec = app.add_flag("--decompose", spec.decompose, "analyze one direction per interval of (0, inf) minus the breakpoints");
  bool partition_only = false;
  app.add_flag("--partition-only", partition_only, "with --decompose: list the intervals without analyzing them")->needs(dec);
  dir->excludes(dec);
  app.add_option("--precision", spec.precision, "working precision in bits")->check(CLI::Range(16L, acsv::kMaxPrec));
  app.add_option("--max-precision", spec.max_precision, "precision escalation ceiling in bits")
      ->check(CLI::Range(16L, acsv::kMaxPrec));
  app.add_option("--oracle", spec.oracle, "compare against exact coefficients up to scale N (0 skips)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-steps", spec.max_steps, "ascent step cap per path")->check(CLI::PositiveNumber);
  app.add_option("--max-cells", spec.max_cells, "oracle table cell cap")->check(CLI::PositiveNumber);
  app.add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  try {
    app.parse(argc, argv);
    if (!direction.empty()) spec.direction = acsv::parse_direction(direction);
    else if (!spec.decompose) throw CLI::ValidationError("one of --direction or --decompose is required");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : acsv::kExitUsage;
  } catch (const acsv::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return acsv::kExitUsage;
  }
  spec.timestamp = !no_timestamp;
  spec.analyze = !partition_only;

  acsv::JobOutcome out = acsv::run_job(spec);
  std::string doc = out.report.dump(2) + "\n";
  if (json_path == "-") {
    std::cout << doc;
  } else {
    std::cout << out.text;
    if (!json_path.empty()) {
      std::ofstream f(json_path);
      if (!f) {
        std::cerr << "cannot write " << json_path << "\n";
        return acsv::kExitUsage;
      }
      f << doc;
    }
  }
  if (out.exit_code != acsv::kExitOk && json_path != "-") std::cerr << "exit status " << out.exit_code << "\n";
  return out.exit_code;
}
