#pragma once

#include "sedflow/config.hpp"
#include "sedflow/grid.hpp"

namespace sedflow {

Grid2D make_grid(const CaseConfig& config);

// Initial cell averages of the configured case. Piecewise-constant data are averaged exactly
// over each cell; smooth data are sampled at cell centres.
StateField init_case(const CaseConfig& config, const Grid2D& grid);

// Bed of the c-property and bedmotion cases: 0.02 + 0.1 exp(-(x-0.5)^2 - (y-0.5)^2).
double gaussian_bump(double x, double y);

}  // namespace sedflow
