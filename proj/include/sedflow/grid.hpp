#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sedflow/types.hpp"

namespace sedflow {

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  bool operator==(const Bounds&) const = default;
};

// Uniform cell-centred mesh. Interior cells are indexed i in [0, nx), k in [0, ny);
// ghost cells extend the index range by `ghost` on every side.
class Grid2D {
 public:
  static Grid2D build(const Bounds& bounds, int nx, int ny, int ghost = 2);

  const Bounds& bounds() const { return bounds_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }

  // Padded extents including ghost layers.
  int stride() const { return nx_ + 2 * ghost_; }
  int rows() const { return ny_ + 2 * ghost_; }
  std::size_t padded_size() const { return static_cast<std::size_t>(stride()) * rows(); }
  std::size_t interior_size() const { return static_cast<std::size_t>(nx_) * ny_; }

  double x_center(int i) const { return bounds_.x_min + (i + 0.5) * dx_; }
  double y_center(int k) const { return bounds_.y_min + (k + 0.5) * dy_; }
  double x_face(int i) const { return bounds_.x_min + i * dx_; }  // left face of cell i
  double y_face(int k) const { return bounds_.y_min + k * dy_; }  // bottom face of cell k

  // Row-major over (k, i) in the padded array.
  std::size_t index(int i, int k) const
  {
    return static_cast<std::size_t>(k + ghost_) * stride() + static_cast<std::size_t>(i + ghost_);
  }

  bool same_shape(const Grid2D& o) const { return nx_ == o.nx_ && ny_ == o.ny_ && ghost_ == o.ghost_; }

 private:
  Grid2D(const Bounds& b, int nx, int ny, int ghost);

  Bounds bounds_;
  int nx_;
  int ny_;
  int ghost_;
  double dx_;
  double dy_;
};

// One scalar per cell, ghost layers included.
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(const Grid2D& grid, double value = 0.0);

  double& operator()(int i, int k) { return data_[index(i, k)]; }
  double operator()(int i, int k) const { return data_[index(i, k)]; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool matches(const Grid2D& grid) const
  {
    return nx_ == grid.nx() && ny_ == grid.ny() && ghost_ == grid.ghost() && data_.size() == grid.padded_size();
  }

  bool operator==(const Field2D& o) const = default;

 private:
  std::size_t index(int i, int k) const
  {
    return static_cast<std::size_t>(k + ghost_) * (nx_ + 2 * ghost_) + static_cast<std::size_t>(i + ghost_);
  }

  int nx_ = 0;
  int ny_ = 0;
  int ghost_ = 0;
  std::vector<double> data_;
};

// The five conserved components stored as separate fields.
struct StateField {
  StateField() = default;
  explicit StateField(const Grid2D& grid) : comp{Field2D(grid), Field2D(grid), Field2D(grid), Field2D(grid), Field2D(grid)} {}

  Field2D& operator[](std::size_t m) { return comp[m]; }
  const Field2D& operator[](std::size_t m) const { return comp[m]; }

  ConservedState at(int i, int k) const
  {
    return {comp[kH](i, k), comp[kHU](i, k), comp[kHV](i, k), comp[kHC](i, k), comp[kZB](i, k)};
  }
  void set(int i, int k, const ConservedState& w)
  {
    for (std::size_t m = 0; m < kNumVars; ++m) comp[m](i, k) = w[m];
  }

  bool operator==(const StateField& o) const = default;

  std::array<Field2D, kNumVars> comp;
};

enum class BoundaryKind { outflow, wall, periodic };

struct BoundarySpec {
  BoundaryKind left = BoundaryKind::outflow;
  BoundaryKind right = BoundaryKind::outflow;
  BoundaryKind bottom = BoundaryKind::outflow;
  BoundaryKind top = BoundaryKind::outflow;

  static BoundarySpec uniform(BoundaryKind kind) { return {kind, kind, kind, kind}; }
  bool operator==(const BoundarySpec&) const = default;
  // Throws ConfigError when periodic is not set on both sides of an axis.
  void validate() const;
};

// Which component changes sign at a reflective wall.
enum class Parity { even, odd_x, odd_y };

void fill_ghosts(Field2D& field, const Grid2D& grid, const BoundarySpec& bc, Parity parity);
void fill_ghosts(StateField& state, const Grid2D& grid, const BoundarySpec& bc);

}  // namespace sedflow
