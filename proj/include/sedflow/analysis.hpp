#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sedflow/grid.hpp"
#include "sedflow/snapshot.hpp"

namespace sedflow {

// Interior values of one scalar quantity, row-major over (k, i).
struct ScalarField {
  int nx = 0;
  int ny = 0;
  std::vector<double> values;

  double operator()(int i, int k) const { return values[static_cast<std::size_t>(k) * nx + i]; }
};

// Field names: h, hu, hv, hC, zb, eta.
ScalarField extract(const StateField& state, const Grid2D& grid, const std::string& field);

// (1 / (nx ny)) sum |a - b|. Throws ContractViolation on a shape mismatch.
double l1_diff(const ScalarField& a, const ScalarField& b);

// Averages fx-by-fy blocks of fine cells onto one coarse cell.
ScalarField restrict_average(const ScalarField& fine, int fx, int fy);

struct RateEstimate {
  double coarse_diff = 0.0;  // ||phi_{N/2} - phi_{N/4}||
  double fine_diff = 0.0;    // ||phi_N - phi_{N/2}||
  double rate = 0.0;         // log2(coarse_diff / fine_diff); non-finite when undefined
  std::string diagnostic;    // set when the rate is not finite
};

double convergence_rate(double coarse_diff, double fine_diff);

// Self-convergence from three nested solutions; finer fields are restricted by averaging
// (2x2 blocks, or 2x1 when ny stays 1).
RateEstimate convergence_rate(const ScalarField& quarter, const ScalarField& half, const ScalarField& full);

// Two-column (x, value) text data; blank lines and lines starting with '#' are skipped, and
// commas, tabs or spaces separate the columns.
std::vector<std::pair<double, double>> read_xy(const std::filesystem::path& path);

struct Misfit {
  double l1 = 0.0;  // mean |sim - data| over the points inside the domain
  std::size_t points = 0;
};

// Compares a snapshot's profile along x (row nearest the domain's mid-height) with data by
// linear interpolation of the cell-centre values.
Misfit profile_misfit(const Snapshot& snap, const std::vector<std::pair<double, double>>& data,
                      const std::string& field);

}  // namespace sedflow
