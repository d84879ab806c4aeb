#pragma once

#include <functional>
#include <vector>

#include "sedflow/grid.hpp"
#include "sedflow/physics.hpp"
#include "sedflow/scheme.hpp"

namespace sedflow {

struct StepControl {
  double cfl = 0.5;
  double t = 0.0;
  double t_end = 0.0;
  double dt_last = 0.0;
  double dt_max = 1.0;  // used only when every speed is zero
  long max_steps = 10'000'000;

  // Throws ConfigError on cfl outside (0, 1], t > t_end, non-positive dt_max or max_steps.
  void validate() const;
};

// cfl * min(dx / 4a, dy / 4b), clipped to t_end - t; min(dt_max, t_end - t) when a = b = 0.
double compute_dt(const RhsResult& speeds, const Grid2D& grid, const StepControl& control);
// Same, from a fresh right-hand-side evaluation of `state`.
double compute_dt(StateField& state, RhsOperator& op, const StepControl& control);

// Floors h at 0, zeroes hu, hv, hC where h <= h_cut and clips hC to [0, h].
// Returns the smallest interior h seen before flooring.
double enforce_admissible(StateField& state, const Grid2D& grid, const PhysParams& p);

using RhsFunction = std::function<RhsResult(StateField& state, StateField& dwdt)>;
using StageHook = std::function<double(StateField& state)>;
// Stiff part applied to each forward-Euler update over its dt, before the hook.
using StageRelax = std::function<void(StateField& state, double dt)>;

struct StepStats {
  double min_h_prefloor = 0.0;  // over both stages
};

// Heun / SSP-RK2 stepper. `prepare` evaluates L(W^n) and returns its speeds so the caller can
// choose dt; `step` then advances with that cached evaluation.
class SspRk2 {
 public:
  SspRk2(const Grid2D& grid, RhsFunction rhs, StageHook after_stage = {}, StageRelax relax = {});

  RhsResult prepare(StateField& state);
  StepStats step(StateField& state, double dt);

 private:
  Grid2D grid_;
  RhsFunction rhs_;
  StageHook after_stage_;
  StageRelax relax_;
  StateField l0_;
  StateField l1_;
  StateField w0_;
  bool prepared_ = false;
};

// One full step from scratch: prepare + step.
StepStats ssp_rk2_step(StateField& state, double dt, const Grid2D& grid, RhsFunction rhs,
                       StageHook after_stage = {}, StageRelax relax = {});

struct StepRecord {
  long step = 0;
  double t = 0.0;  // time after the step
  double dt = 0.0;
  double min_h = 0.0;  // before flooring, both stages
  double max_speed = 0.0;
};

struct AdvanceOptions {
  std::vector<double> output_times;  // observer times; dt is clipped to land on them
  std::function<void(double t, const StateField& state)> on_output;
  std::function<void(const StepRecord& record, const StateField& state)> on_step;
};

struct AdvanceResult {
  double t = 0.0;
  long steps = 0;
  double min_h = 0.0;
  std::vector<StepRecord> log;
};

// Advances `state` from control.t to control.t_end. Throws NumericalFailure when max_steps is
// exceeded or the right-hand side turns non-finite (message carries step and stage).
AdvanceResult advance_to(StateField& state, StepControl& control, RhsOperator& op, const AdvanceOptions& options);

}  // namespace sedflow
