#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sedflow/analysis.hpp"
#include "sedflow/config.hpp"
#include "sedflow/runner.hpp"
#include "sedflow/snapshot.hpp"

using namespace sedflow;

namespace {

struct CaseFlags {
  std::string case_name;
  std::string config_path;
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::optional<std::string> out;
};

void add_case_flags(CLI::App* cmd, CaseFlags& f)
{
  cmd->add_option("--case", f.case_name, "c-property, dambreak1d, multigrain, bedmotion, riemann2d or custom");
  cmd->add_option("--config", f.config_path, "key = value configuration file");
  cmd->add_option("--nx", f.nx, "cells in x");
  cmd->add_option("--ny", f.ny, "cells in y");
  cmd->add_option("--cfl", f.cfl, "Courant number in (0, 1]");
  cmd->add_option("--t-end", f.t_end, "final time [s]");
  cmd->add_option("--out", f.out, "output directory");
}

CaseConfig resolve(const CaseFlags& f)
{
  std::optional<CaseKind> kind;
  if (!f.case_name.empty()) kind = parse_case_name(f.case_name);
  if (f.config_path.empty() && !kind) throw ConfigError("case: give --case or --config");
  CaseConfig c = f.config_path.empty() ? parse_config("", kind, false) : load_config(f.config_path, kind, false);
  if (f.nx) c.nx = *f.nx;
  if (f.ny) c.ny = *f.ny;
  if (f.cfl) c.cfl = *f.cfl;
  if (f.t_end) {
    c.t_end = *f.t_end;
    std::erase_if(c.snapshot_times, [&](double t) { return t > c.t_end; });
  }
  if (f.out) c.output_dir = *f.out;
  c.validate();
  return c;
}

std::vector<int> parse_n_list(const std::string& s)
{
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("n-list: bad entry '" + item + "'");
    }
  }
  return out;
}

int cmd_run(const CaseFlags& f)
{
  const CaseConfig c = resolve(f);
  for (const RunReport& r : run_case(c)) {
    std::printf("%s d50=%g: t=%g steps=%ld min_h=%.3e max|d eta|=%.3e max|hu|=%.3e max|hv|=%.3e wall=%.2fs\n",
                r.case_name.c_str(), r.d50, r.t_final, r.steps, r.min_h, r.max_eta_change, r.max_abs_hu,
                r.max_abs_hv, r.wall_seconds);
    if (r.misfit) std::printf("  L1 misfit (eta) = %.6e over %zu points\n", r.misfit->l1, r.misfit->points);
  }
  std::printf("output: %s\n", c.output_dir.c_str());
  return 0;
}

int cmd_converge(const CaseFlags& f, const std::string& n_list, const std::string& field)
{
  const CaseConfig c = resolve(f);
  std::vector<std::string> fields;
  std::stringstream ss(field);
  std::string item;
  while (std::getline(ss, item, ',')) fields.push_back(item);
  for (const ConvergenceTable& t : converge(c, parse_n_list(n_list), fields)) {
    std::printf("field %s\n%8s %14s %8s\n", t.field.c_str(), "N", "L1 diff", "rate");
    for (const ConvergenceRow& r : t.rows) {
      if (r.n == t.rows.front().n)
        std::printf("%8d %14s %8s\n", r.n, "-", "-");
      else if (std::isnan(r.rate))
        std::printf("%8d %14.6e %8s\n", r.n, r.diff, "-");
      else
        std::printf("%8d %14.6e %8.3f\n", r.n, r.diff, r.rate);
    }
    if (!t.diagnostic.empty()) std::printf("  %s\n", t.diagnostic.c_str());
  }
  return 0;
}

int cmd_compare(const std::string& snapshot, const std::string& data, const std::string& field)
{
  const Misfit m = profile_misfit(read_snapshot(snapshot), read_xy(data), field);
  std::printf("L1 misfit (%s) = %.6e over %zu points\n", field.c_str(), m.l1, m.points);
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"sedflow: 2D shallow-water sediment transport solver"};
  app.require_subcommand(1);

  CaseFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run a case and write snapshots");
  add_case_flags(run, run_flags);

  CaseFlags conv_flags;
  std::string n_list = "50,100,200";
  std::string field = "h,zb";
  CLI::App* conv = app.add_subcommand("converge", "self-convergence study over nested grids");
  add_case_flags(conv, conv_flags);
  conv->add_option("--n-list", n_list, "comma-separated resolutions, each double the previous");
  conv->add_option("--field", field, "comma-separated fields: h, hu, hv, hC, zb, eta");

  std::string snapshot;
  std::string data;
  std::string cmp_field = "eta";
  CLI::App* cmp = app.add_subcommand("compare", "L1 misfit of a snapshot profile against (x, value) data");
  cmp->add_option("--snapshot", snapshot, "snapshot CSV")->required();
  cmp->add_option("--data", data, "two-column data file")->required();
  cmp->add_option("--field", cmp_field, "field to compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*conv) return cmd_converge(conv_flags, n_list, field);
    if (*cmp) return cmd_compare(snapshot, data, cmp_field);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
