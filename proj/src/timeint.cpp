#include "sedflow/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace sedflow {

void StepControl::validate() const
{
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl: must lie in (0, 1]");
  if (!(t <= t_end)) throw ConfigError("t_end: must not precede the start time");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max: must be positive");
  if (max_steps < 1) throw ConfigError("max_steps: must be >= 1");
}

double compute_dt(const RhsResult& speeds, const Grid2D& grid, const StepControl& control)
{
  const double remaining = control.t_end - control.t;
  const double a = speeds.max_speed_x;
  const double b = speeds.max_speed_y;
  if (!(a > 0.0) && !(b > 0.0)) return std::min(control.dt_max, remaining);
  const double inf = std::numeric_limits<double>::infinity();
  const double tx = a > 0.0 ? grid.dx() / (4.0 * a) : inf;
  const double ty = b > 0.0 ? grid.dy() / (4.0 * b) : inf;
  return std::min(control.cfl * std::min(tx, ty), remaining);
}

double compute_dt(StateField& state, RhsOperator& op, const StepControl& control)
{
  StateField scratch(op.grid());
  return compute_dt(op(state, scratch), op.grid(), control);
}

double enforce_admissible(StateField& s, const Grid2D& grid, const PhysParams& p)
{
  double min_h = std::numeric_limits<double>::infinity();
  const int nx = grid.nx();
  const int ny = grid.ny();
#pragma omp parallel for schedule(static) reduction(min : min_h)
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      double& h = s[kH](i, k);
      min_h = std::min(min_h, h);
      if (h < 0.0) h = 0.0;
      if (h <= p.h_cut) {
        s[kHU](i, k) = 0.0;
        s[kHV](i, k) = 0.0;
        s[kHC](i, k) = 0.0;
      } else {
        s[kHC](i, k) = std::clamp(s[kHC](i, k), 0.0, h);
      }
    }
  }
  return min_h;
}

SspRk2::SspRk2(const Grid2D& grid, RhsFunction rhs, StageHook after_stage, StageRelax relax)
    : grid_(grid),
      rhs_(std::move(rhs)),
      after_stage_(std::move(after_stage)),
      relax_(std::move(relax)),
      l0_(grid),
      l1_(grid),
      w0_(grid)
{
}

RhsResult SspRk2::prepare(StateField& state)
{
  const RhsResult r = rhs_(state, l0_);
  prepared_ = true;
  return r;
}

namespace {

void axpy_interior(StateField& out, const StateField& base, double dt, const StateField& dwdt, const Grid2D& grid)
{
  const int nx = grid.nx();
  const int ny = grid.ny();
#pragma omp parallel for schedule(static)
  for (int k = 0; k < ny; ++k)
    for (std::size_t m = 0; m < kNumVars; ++m)
      for (int i = 0; i < nx; ++i) out[m](i, k) = base[m](i, k) + dt * dwdt[m](i, k);
}

}  // namespace

StepStats SspRk2::step(StateField& state, double dt)
{
  if (!prepared_) prepare(state);
  prepared_ = false;
  StepStats stats;
  stats.min_h_prefloor = std::numeric_limits<double>::infinity();

  w0_ = state;
  axpy_interior(state, w0_, dt, l0_, grid_);
  if (relax_) relax_(state, dt);
  if (after_stage_) stats.min_h_prefloor = std::min(stats.min_h_prefloor, after_stage_(state));

  rhs_(state, l1_);
  axpy_interior(state, state, dt, l1_, grid_);
  if (relax_) relax_(state, dt);
  const int nx = grid_.nx();
  const int ny = grid_.ny();
#pragma omp parallel for schedule(static)
  for (int k = 0; k < ny; ++k)
    for (std::size_t m = 0; m < kNumVars; ++m)
      for (int i = 0; i < nx; ++i) state[m](i, k) = 0.5 * w0_[m](i, k) + 0.5 * state[m](i, k);
  if (after_stage_) stats.min_h_prefloor = std::min(stats.min_h_prefloor, after_stage_(state));
  return stats;
}

StepStats ssp_rk2_step(StateField& state, double dt, const Grid2D& grid, RhsFunction rhs, StageHook after_stage,
                       StageRelax relax)
{
  SspRk2 stepper(grid, std::move(rhs), std::move(after_stage), std::move(relax));
  return stepper.step(state, dt);
}

AdvanceResult advance_to(StateField& state, StepControl& control, RhsOperator& op, const AdvanceOptions& options)
{
  control.validate();
  const Grid2D& grid = op.grid();
  const PhysParams& p = op.params();

  std::vector<double> outputs = options.output_times;
  std::sort(outputs.begin(), outputs.end());
  std::size_t next = 0;
  auto emit_due = [&](double t) {
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    while (next < outputs.size() && outputs[next] <= t + tol) {
      if (outputs[next] <= control.t_end + tol && options.on_output) options.on_output(t, state);
      ++next;
    }
  };

  AdvanceResult result;
  result.t = control.t;
  result.min_h = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.ny(); ++k)
    for (int i = 0; i < grid.nx(); ++i) result.min_h = std::min(result.min_h, state[kH](i, k));
  emit_due(control.t);

  int stage = 1;
  RhsFunction rhs = [&](StateField& s, StateField& d) { return op(s, d); };
  StageHook hook = [&](StateField& s) {
    ++stage;
    return enforce_admissible(s, grid, p);
  };
  StageRelax relax = [&](StateField& s, double dt) { op.relax(s, dt); };
  SspRk2 stepper(grid, rhs, hook, relax);

  while (control.t < control.t_end) {
    if (result.steps >= control.max_steps)
      throw NumericalFailure("max_steps (" + std::to_string(control.max_steps) + ") exceeded at t = " +
                             std::to_string(control.t));
    const long step_no = result.steps + 1;
    StepRecord rec;
    try {
      stage = 1;
      const RhsResult speeds = stepper.prepare(state);
      double dt = compute_dt(speeds, grid, control);
      bool hits_output = false;
      if (next < outputs.size() && outputs[next] - control.t <= dt) {
        dt = outputs[next] - control.t;
        hits_output = true;
      }
      if (!(dt > 0.0) || !std::isfinite(dt))
        throw NumericalFailure("invalid time step " + std::to_string(dt) + " at t = " + std::to_string(control.t));
      const StepStats stats = stepper.step(state, dt);
      const bool hits_end = dt == control.t_end - control.t;
      control.t = hits_output ? outputs[next] : (hits_end ? control.t_end : control.t + dt);
      control.dt_last = dt;
      rec = {step_no, control.t, dt, stats.min_h_prefloor, std::max(speeds.max_speed_x, speeds.max_speed_y)};
    } catch (const NumericalFailure& e) {
      throw NumericalFailure(std::string(e.what()) + " (step " + std::to_string(step_no) + ", stage " +
                             std::to_string(stage) + ")");
    }
    result.steps = step_no;
    result.t = control.t;
    result.min_h = std::min(result.min_h, rec.min_h);
    result.log.push_back(rec);
    if (options.on_step) options.on_step(rec, state);
    emit_due(control.t);
  }
  return result;
}

}  // namespace sedflow
