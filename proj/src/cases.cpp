#include "sedflow/cases.hpp"

#include <algorithm>
#include <cmath>

#include "sedflow/snapshot.hpp"

namespace sedflow {

namespace {

// Fraction of [a, b] inside [lo, hi]; exactly 0 or 1 when the interval is outside or inside.
double overlap(double a, double b, double lo, double hi)
{
  if (a >= lo && b <= hi) return 1.0;
  if (b <= lo || a >= hi) return 0.0;
  return (std::min(b, hi) - std::max(a, lo)) / (b - a);
}

// Fraction of cell (i, k) covered by the rectangle [x0, x1] x [y0, y1].
double coverage(const Grid2D& g, int i, int k, double x0, double x1, double y0, double y1)
{
  const double fx = overlap(g.x_face(i), g.x_face(i + 1), x0, x1);
  const double fy = overlap(g.y_face(k), g.y_face(k + 1), y0, y1);
  return fx * fy;
}

void set_cell(StateField& s, int i, int k, double h, double c, double zb)
{
  s.set(i, k, {h, 0.0, 0.0, h * c, zb});
}

}  // namespace

double gaussian_bump(double x, double y)
{
  return 0.02 + 0.1 * std::exp(-(x - 0.5) * (x - 0.5) - (y - 0.5) * (y - 0.5));
}

Grid2D make_grid(const CaseConfig& config) { return Grid2D::build(config.bounds, config.nx, config.ny); }

StateField init_case(const CaseConfig& config, const Grid2D& g)
{
  StateField s(g);
  const double inf = HUGE_VAL;
  for (int k = 0; k < g.ny(); ++k) {
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x_center(i);
      const double y = g.y_center(k);
      switch (config.kind) {
        case CaseKind::c_property: {
          const double zb = gaussian_bump(x, y);
          const double c = 0.7 * std::exp(-5.0 * (x - 0.9) * (x - 0.9) - 50.0 * (y - 0.5) * (y - 0.5));
          set_cell(s, i, k, 2.0 - zb, c, zb);
          break;
        }
        case CaseKind::dambreak1d:
        case CaseKind::multigrain:
          set_cell(s, i, k, 0.1 * coverage(g, i, k, -inf, 0.0, -inf, inf), 0.0, 0.0);
          break;
        case CaseKind::bedmotion: {
          const double zb = gaussian_bump(x, y);
          set_cell(s, i, k, 1.0 - zb, 0.01, zb);
          break;
        }
        case CaseKind::riemann2d: {
          const double inner = coverage(g, i, k, -0.5, 0.5, -0.5, 0.5);
          const double level = 1.0 + inner;  // 2 inside, 1 outside for both h and Zb
          set_cell(s, i, k, level, 0.001, level);
          break;
        }
        case CaseKind::custom: break;
      }
    }
  }
  if (config.kind == CaseKind::custom) {
    const Snapshot snap = read_snapshot(config.initial_state);
    s = snapshot_state(snap, g);
  }
  return s;
}

}  // namespace sedflow
