#include "sedflow/grid.hpp"

#include <string>

namespace sedflow {

Grid2D::Grid2D(const Bounds& b, int nx, int ny, int ghost)
    : bounds_(b), nx_(nx), ny_(ny), ghost_(ghost), dx_((b.x_max - b.x_min) / nx), dy_((b.y_max - b.y_min) / ny)
{
}

Grid2D Grid2D::build(const Bounds& bounds, int nx, int ny, int ghost)
{
  if (nx < 1 || ny < 1)
    throw ConfigError("grid: cell counts must be >= 1 (nx=" + std::to_string(nx) + ", ny=" + std::to_string(ny) + ")");
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min))
    throw ConfigError("grid: domain extent must be positive");
  if (ghost < 2) throw ConfigError("grid: ghost width must be >= 2");
  return Grid2D(bounds, nx, ny, ghost);
}

Field2D::Field2D(const Grid2D& grid, double value)
    : nx_(grid.nx()), ny_(grid.ny()), ghost_(grid.ghost()), data_(grid.padded_size(), value)
{
}

void BoundarySpec::validate() const
{
  if ((left == BoundaryKind::periodic) != (right == BoundaryKind::periodic))
    throw ConfigError("boundary: periodic must be set on both x sides");
  if ((bottom == BoundaryKind::periodic) != (top == BoundaryKind::periodic))
    throw ConfigError("boundary: periodic must be set on both y sides");
}

namespace {

// Source index and sign for ghost position g (1-based distance outside the domain).
struct Mirror {
  int src;
  double sign;
};

Mirror low_side(BoundaryKind kind, int g, int n, bool odd)
{
  switch (kind) {
    case BoundaryKind::outflow: return {0, 1.0};
    case BoundaryKind::wall: return {g - 1, odd ? -1.0 : 1.0};
    case BoundaryKind::periodic: return {n - g, 1.0};
  }
  return {0, 1.0};
}

Mirror high_side(BoundaryKind kind, int g, int n, bool odd)
{
  switch (kind) {
    case BoundaryKind::outflow: return {n - 1, 1.0};
    case BoundaryKind::wall: return {n - g, odd ? -1.0 : 1.0};
    case BoundaryKind::periodic: return {g - 1, 1.0};
  }
  return {n - 1, 1.0};
}

}  // namespace

void fill_ghosts(Field2D& f, const Grid2D& grid, const BoundarySpec& bc, Parity parity)
{
  if (!f.matches(grid)) throw ContractViolation("fill_ghosts: field dimensions do not match grid");
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int ng = grid.ghost();
  const bool odd_x = parity == Parity::odd_x;
  const bool odd_y = parity == Parity::odd_y;

  // x ghosts on interior rows, then y ghosts on full padded rows (fills corners).
  for (int k = 0; k < ny; ++k) {
    for (int g = 1; g <= ng; ++g) {
      const Mirror lo = low_side(bc.left, g, nx, odd_x);
      const Mirror hi = high_side(bc.right, g, nx, odd_x);
      f(-g, k) = lo.sign * f(lo.src, k);
      f(nx - 1 + g, k) = hi.sign * f(hi.src, k);
    }
  }
  for (int g = 1; g <= ng; ++g) {
    const Mirror lo = low_side(bc.bottom, g, ny, odd_y);
    const Mirror hi = high_side(bc.top, g, ny, odd_y);
    for (int i = -ng; i < nx + ng; ++i) {
      f(i, -g) = lo.sign * f(i, lo.src);
      f(i, ny - 1 + g) = hi.sign * f(i, hi.src);
    }
  }
}

void fill_ghosts(StateField& s, const Grid2D& grid, const BoundarySpec& bc)
{
  fill_ghosts(s[kH], grid, bc, Parity::even);
  fill_ghosts(s[kHU], grid, bc, Parity::odd_x);
  fill_ghosts(s[kHV], grid, bc, Parity::odd_y);
  fill_ghosts(s[kHC], grid, bc, Parity::even);
  fill_ghosts(s[kZB], grid, bc, Parity::even);
}

}  // namespace sedflow
