#include "sedflow/runner.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "sedflow/cases.hpp"
#include "sedflow/snapshot.hpp"

namespace sedflow {

namespace {

std::string snapshot_name(double t)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.6f.csv", t);
  return buf;
}

double total_mass(const StateField& s, const Grid2D& g)
{
  double m = 0.0;
  for (int k = 0; k < g.ny(); ++k)
    for (int i = 0; i < g.nx(); ++i) m += s[kH](i, k);
  return m * g.cell_area();
}

long count_resonance(const StateField& s, const Grid2D& g, const PhysParams& p)
{
  long n = 0;
  for (int k = 0; k < g.ny(); ++k) {
    for (int i = 0; i < g.nx(); ++i) {
      const ConservedState w = s.at(i, k);
      if (!(w[kH] > p.h_cut)) continue;
      const BedCelerity b = bed_celerity(w, p);
      const Primitive q = primitive(w, p);
      const double speed = std::sqrt(q.u * q.u + q.v * q.v);
      if (speed == 0.0) continue;
      const std::array<double, 2> dir{q.u / speed, q.v / speed};
      if (eigenvalues(w, {b.ub, b.vb}, dir, p).resonance) ++n;
    }
  }
  return n;
}

}  // namespace

RunResult run_single(const CaseConfig& config, const RunOptions& options)
{
  config.validate();
  if (config.threads > 0) omp_set_num_threads(config.threads);
  const auto start = std::chrono::steady_clock::now();

  const Grid2D grid = make_grid(config);
  RunResult out{grid, init_case(config, grid), {}, {}};
  StateField& state = out.state;
  RunReport& rep = out.report;
  rep.case_name = case_name(config.kind);
  rep.d50 = config.params.d50;
  rep.mass_initial = total_mass(state, grid);
  const ScalarField eta0 = extract(state, grid, "eta");

  RhsOperator op(grid, config.bc, config.params, config.scheme);
  StepControl control;
  control.cfl = config.cfl;
  control.t = 0.0;
  control.t_end = config.t_end;
  control.dt_max = config.dt_max;
  control.max_steps = config.max_steps;

  std::vector<double> times = config.snapshot_times;
  if (std::find(times.begin(), times.end(), config.t_end) == times.end()) times.push_back(config.t_end);

  if (options.diagnostics) rep.energy.emplace_back(0.0, energy_diagnostic(state, grid, config.params));

  AdvanceOptions adv;
  adv.output_times = times;
  adv.on_output = [&](double t, const StateField& s) {
    if (options.write_files) {
      const std::filesystem::path path = std::filesystem::path(config.output_dir) / snapshot_name(t);
      write_snapshot(s, grid, path, {t, &config, &out.log});
      rep.snapshots.push_back(path.string());
    }
    if (options.on_snapshot) options.on_snapshot(t, s, grid);
  };
  adv.on_step = [&](const StepRecord& r, const StateField& s) {
    out.log.push_back(r);
    if (!options.diagnostics) return;
    rep.energy.emplace_back(r.t, energy_diagnostic(s, grid, config.params));
    rep.resonance_cells += count_resonance(s, grid, config.params);
  };

  const AdvanceResult res = advance_to(state, control, op, adv);
  rep.t_final = res.t;
  rep.steps = res.steps;
  rep.min_h = res.min_h;
  rep.mass_final = total_mass(state, grid);
  const ScalarField eta = extract(state, grid, "eta");
  for (std::size_t n = 0; n < eta.values.size(); ++n)
    rep.max_eta_change = std::max(rep.max_eta_change, std::abs(eta.values[n] - eta0.values[n]));
  for (int k = 0; k < grid.ny(); ++k) {
    for (int i = 0; i < grid.nx(); ++i) {
      rep.max_abs_hu = std::max(rep.max_abs_hu, std::abs(state[kHU](i, k)));
      rep.max_abs_hv = std::max(rep.max_abs_hv, std::abs(state[kHV](i, k)));
    }
  }
  if (!config.experimental_data.empty() && !rep.snapshots.empty()) {
    const Snapshot snap = read_snapshot(rep.snapshots.back());
    rep.misfit = profile_misfit(snap, read_xy(config.experimental_data), "eta");
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<RunReport> run_case(const CaseConfig& config, const RunOptions& options)
{
  std::vector<RunReport> reports;
  if (config.kind == CaseKind::multigrain) {
    for (double d : config.grain_sizes) {
      CaseConfig c = config;
      c.params.d50 = d;
      c.output_dir = (std::filesystem::path(config.output_dir) / ("d50_" + format_double(d))).string();
      reports.push_back(run_single(c, options).report);
    }
  } else {
    reports.push_back(run_single(config, options).report);
  }
  if (options.write_files) {
    std::filesystem::create_directories(config.output_dir);
    std::ofstream f(std::filesystem::path(config.output_dir) / "report.json");
    f << report_json(reports) << '\n';
  }
  return reports;
}

std::vector<ConvergenceTable> converge(const CaseConfig& base, const std::vector<int>& n_list,
                                       const std::vector<std::string>& fields)
{
  if (n_list.size() < 3) throw ConfigError("n-list: need at least three resolutions");
  for (std::size_t j = 1; j < n_list.size(); ++j)
    if (n_list[j] != 2 * n_list[j - 1]) throw ConfigError("n-list: each resolution must double the previous one");
  const bool one_d = base.ny == 1;

  std::vector<std::vector<ScalarField>> solutions(fields.size());
  for (int n : n_list) {
    CaseConfig c = base;
    c.nx = n;
    c.ny = one_d ? 1 : n;
    c.snapshot_times.clear();
    RunOptions opt;
    opt.write_files = false;
    opt.diagnostics = false;
    const RunResult r = run_single(c, opt);
    for (std::size_t f = 0; f < fields.size(); ++f) solutions[f].push_back(extract(r.state, r.grid, fields[f]));
  }

  std::vector<ConvergenceTable> tables;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    ConvergenceTable t;
    t.field = fields[f];
    const auto& sol = solutions[f];
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      ConvergenceRow row;
      row.n = n_list[j];
      row.rate = std::numeric_limits<double>::quiet_NaN();
      if (j >= 1) row.diff = l1_diff(restrict_average(sol[j], 2, one_d ? 1 : 2), sol[j - 1]);
      if (j >= 2) {
        const RateEstimate e = convergence_rate(sol[j - 2], sol[j - 1], sol[j]);
        row.rate = e.rate;
        if (!e.diagnostic.empty()) t.diagnostic = e.diagnostic;
      }
      t.rows.push_back(row);
    }
    tables.push_back(t);
  }
  return tables;
}

std::string report_json(const std::vector<RunReport>& reports)
{
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RunReport& r : reports) {
    nlohmann::ordered_json j;
    j["case"] = r.case_name;
    j["d50"] = r.d50;
    j["t_final"] = r.t_final;
    j["steps"] = r.steps;
    j["min_h"] = r.min_h;
    j["max_eta_change"] = r.max_eta_change;
    j["max_abs_hu"] = r.max_abs_hu;
    j["max_abs_hv"] = r.max_abs_hv;
    j["mass_initial"] = r.mass_initial;
    j["mass_final"] = r.mass_final;
    j["resonance_cells"] = r.resonance_cells;
    j["wall_seconds"] = r.wall_seconds;
    j["snapshots"] = r.snapshots;
    nlohmann::ordered_json energy = nlohmann::ordered_json::array();
    for (const auto& [t, e] : r.energy) energy.push_back({t, e});
    j["energy"] = energy;
    if (r.misfit) j["misfit_l1_eta"] = {{"l1", r.misfit->l1}, {"points", r.misfit->points}};
    arr.push_back(j);
  }
  return arr.dump(1);
}

}  // namespace sedflow
