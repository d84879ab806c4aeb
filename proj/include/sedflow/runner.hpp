#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sedflow/analysis.hpp"
#include "sedflow/config.hpp"
#include "sedflow/grid.hpp"
#include "sedflow/timeint.hpp"

namespace sedflow {

struct RunReport {
  std::string case_name;
  double d50 = 0.0;
  double t_final = 0.0;
  long steps = 0;
  double min_h = 0.0;           // over the initial state and every stage, before flooring
  double max_eta_change = 0.0;  // max |eta - eta_0| at the final time
  double max_abs_hu = 0.0;
  double max_abs_hv = 0.0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
  std::vector<std::pair<double, double>> energy;  // (t, energy)
  long resonance_cells = 0;                       // cell-steps flagged near resonance
  double wall_seconds = 0.0;
  std::vector<std::string> snapshots;
  std::optional<Misfit> misfit;  // final eta against experimental_data
};

struct RunOptions {
  bool write_files = true;
  bool diagnostics = true;  // energy series and resonance count
  std::function<void(double t, const StateField& state, const Grid2D& grid)> on_snapshot;
};

struct RunResult {
  Grid2D grid;
  StateField state;
  RunReport report;
  std::vector<StepRecord> log;
};

// One run of `config` as given (multigrain is expanded by run_case).
RunResult run_single(const CaseConfig& config, const RunOptions& options = {});

// Full case: multigrain runs once per grain size, into output_dir/d50_<value>.
// Writes report.json next to the snapshots when files are enabled.
std::vector<RunReport> run_case(const CaseConfig& config, const RunOptions& options = {});

struct ConvergenceRow {
  int n = 0;
  double diff = 0.0;  // ||phi_N - phi_{N/2}||, 0 for the first resolution
  double rate = 0.0;  // NaN until three resolutions are available
};

struct ConvergenceTable {
  std::string field;
  std::vector<ConvergenceRow> rows;
  std::string diagnostic;
};

// Runs the case at each N (ny stays 1 for one-dimensional cases) and tabulates
// self-convergence of each field at t_end.
std::vector<ConvergenceTable> converge(const CaseConfig& base, const std::vector<int>& n_list,
                                       const std::vector<std::string>& fields);

std::string report_json(const std::vector<RunReport>& reports);

}  // namespace sedflow
