// Experiment orchestration: run a scenario, apply the requested analyses,
// and emit CSV tables and log-log SVG charts.
#pragma once

#include "rda/analysis.hpp"
#include "rda/core.hpp"
#include "rda/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rda {

struct Verdict {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
};

struct ExperimentResult {
  Scenario scenario;
  TrajectoryReport trajectory;
  std::optional<EnvelopeVerdict> envelope;
  std::optional<AmplitudeVerdict> amplitude;
  std::optional<LowerBoundCurve> lower_bound;
  std::vector<Verdict> verdicts;

  const Verdict* find(const std::string& name) const;
};

/// Output selectors understood by execute().
const std::vector<std::string>& known_outputs();

/// Runs the solver and the analyses selected in scenario.outputs. No IO.
ExperimentResult execute(const Scenario& scenario);

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// 0 when the pipeline completed, whatever the verdicts; 1 on precondition
/// violations, 2 on IO failure. Diagnostics go to `log`.
int run_experiment(const Scenario& scenario, const std::filesystem::path& out_dir, std::ostream& log);

struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string trajectory_csv(const TrajectoryReport& report);
std::string envelope_csv(const EnvelopeVerdict& verdict);
std::string verdicts_csv(const std::vector<Verdict>& verdicts);

/// Reads a CSV whose cells are all numbers.
NumericTable parse_numeric_csv(const std::string& text);
/// Inverse of trajectory_csv: samples plus the optional blow-up row.
TrajectoryReport parse_trajectory_csv(const std::string& text);
std::vector<Verdict> parse_verdicts_csv(const std::string& text);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static log-log line chart; points with nonpositive coordinates are skipped.
std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series);

/// Chart of the four norm columns of a trajectory CSV.
std::string trajectory_svg(const TrajectoryReport& report, const std::string& title);

}  // namespace rda
