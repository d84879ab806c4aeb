#pragma once

#include "sedflow/grid.hpp"
#include "sedflow/physics.hpp"
#include "sedflow/types.hpp"

namespace sedflow {

struct AenoParams {
  double l = 1.0;
  double eps = 1.0e-4;

  bool operator==(const AenoParams&) const = default;
};

// Blending weight beta = r / sqrt(l^2 + r^2), r = |d_minus| / (|d_plus| + eps). Lies in [0, 1).
double aeno_weight(double d_minus, double d_plus, const AenoParams& aeno);

// beta * d_plus + (1 - beta) * d_minus.
double aeno_slope(double d_minus, double d_plus, const AenoParams& aeno);

// Limited slope of every component of cell (i, k) along `axis`. The depth slope is
// additionally capped so that neither face value of h goes negative; the bed slope is
// scaled by the same factor.
Vec5 cell_slope(const StateField& w, int i, int k, Axis axis, const Grid2D& grid, const AenoParams& aeno);

// Left/right states at one cell face.
struct InterfacePair {
  ConservedState minus{};  // limit from the lower-index cell
  ConservedState plus{};   // limit from the higher-index cell
  Primitive prim_minus{};
  Primitive prim_plus{};

  double eta_minus() const { return minus[kH] + minus[kZB]; }
  double eta_plus() const { return plus[kH] + plus[kZB]; }
};

// Raw linear extrapolation to the face between `lower` and `upper` (no correction).
InterfacePair extrapolate(const ConservedState& lower, const Vec5& lower_slope, const ConservedState& upper,
                          const Vec5& upper_slope, double spacing, const PhysParams& p);

// Bed and depth correction of a raw pair: interface bed from the max/min rule,
// non-negative depths, and discharges / hC rebuilt from the raw velocities and concentration.
InterfacePair hydrostatic_correct(const InterfacePair& raw, const PhysParams& p);

// Corrected pair at the face (i + 1/2, k) for axis x, or (i, k + 1/2) for axis y.
InterfacePair reconstruct_face(const StateField& w, int i, int k, Axis axis, const Grid2D& grid,
                               const AenoParams& aeno, const PhysParams& p);

}  // namespace sedflow
