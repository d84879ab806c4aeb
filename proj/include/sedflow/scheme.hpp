#pragma once

#include <vector>

#include "sedflow/grid.hpp"
#include "sedflow/physics.hpp"
#include "sedflow/reconstruction.hpp"
#include "sedflow/types.hpp"

namespace sedflow {

enum class Quadrature { midpoint, gauss3, single_point };

struct SchemeOptions {
  AenoParams aeno;
  Quadrature quadrature = Quadrature::midpoint;
  bool nonconservative = true;  // false: drop every B term (plain central-upwind)
  bool exchange = true;         // erosion/deposition source
  bool friction = true;
  bool implicit_friction = true;  // friction applied by apply_friction after each stage, not in the rhs
  bool diffusion = true;          // concentration diffusion

  bool operator==(const SchemeOptions&) const = default;
};

// One-sided speeds at a face; plus >= 0 >= minus.
struct Speeds {
  double plus = 0.0;
  double minus = 0.0;
};

Speeds local_speeds(const InterfacePair& pair, const PhysParams& p, Axis axis, bool include_bed = true);

// Linear-path integral of the nonconservative products from `from` to `to`.
Vec5 path_integral(const ConservedState& from, const ConservedState& to, const PhysParams& p, Axis axis,
                   Quadrature quad);
Vec5 path_integral(const InterfacePair& pair, const PhysParams& p, Axis axis, Quadrature quad);

// -g {{h}} [h]; stands in for -(1/2) g [h^2] in the normal momentum jump.
double wb_topography(const InterfacePair& pair, const PhysParams& p);

// F(to) - F(from) + b_psi with the normal pressure jump written as g {{h}} [h], so that
// a flat free surface cancels against g {{h}} [Zb] term by term.
Vec5 total_jump(const ConservedState& from, const ConservedState& to, const Vec5& b_psi, const PhysParams& p,
                Axis axis);

struct Fluctuation {
  Vec5 d_minus{};
  Vec5 d_plus{};
  Vec5 cu_flux{};
  Vec5 b_psi{};
  double mass_flux = 0.0;  // h row of the central-upwind flux, always filled
};

Fluctuation fluctuations(const InterfacePair& pair, const Speeds& speeds, const Vec5& b_psi, const PhysParams& p,
                         Axis axis);

// Pointwise source parts of cell (i, k): exchange and friction.
Vec5 local_source(const ConservedState& w, const PhysParams& p, const SchemeOptions& opt);
Vec5 local_source(const ConservedState& w, const PhysParams& p, const SchemeOptions& opt, const SedimentConstants& k);

// Linearly implicit friction over dt on every wet interior cell:
// (hu, hv) /= 1 + dt Cf |u| / h. Shrinks |hu| and |hv| without reversing them.
void apply_friction(StateField& state, const Grid2D& grid, const PhysParams& p, double dt);

// Per-cell closure values needed by the source terms.
struct CellClosure {
  double exchange = 0.0;  // E - D
  double fs_h = 0.0;      // f_s * h
  double c = 0.0;
};

CellClosure cell_closure(const ConservedState& w, const PhysParams& p);
CellClosure cell_closure(const ConservedState& w, const PhysParams& p, const SedimentConstants& k);

// Divergence of f_s h nu_m grad C at (i, k) from the closures of the cell and its four neighbours.
double diffusion_source(const CellClosure& centre, const CellClosure& west, const CellClosure& east,
                        const CellClosure& south, const CellClosure& north, const Grid2D& grid, const PhysParams& p);

struct RhsResult {
  double max_speed_x = 0.0;  // max over x-faces of max(a+, -a-)
  double max_speed_y = 0.0;
};

// Buffered, OpenMP-parallel right-hand side. Fills the ghost layers of `state` in place.
class RhsOperator {
 public:
  RhsOperator(const Grid2D& grid, const BoundarySpec& bc, const PhysParams& params, const SchemeOptions& options);

  RhsResult operator()(StateField& state, StateField& rhs);
  // Stage relaxation for the implicitly treated friction; no-op otherwise.
  void relax(StateField& state, double dt) const;

  const Grid2D& grid() const { return grid_; }
  const BoundarySpec& boundary() const { return bc_; }
  const PhysParams& params() const { return params_; }
  const SchemeOptions& options() const { return opt_; }

 private:
  struct Face {
    Vec5 d_minus;
    Vec5 d_plus;
    double mass_flux;
    InterfacePair pair;  // corrected states
  };

  std::size_t x_face_index(int i, int k) const;  // face (i + 1/2, k), i in [-1, nx)
  std::size_t y_face_index(int i, int k) const;  // face (i, k + 1/2), k in [-1, ny)

  Grid2D grid_;
  BoundarySpec bc_;
  PhysParams params_;
  SchemeOptions opt_;
  SedimentConstants constants_;
  std::vector<Vec5> slope_x_;
  std::vector<Vec5> slope_y_;
  std::vector<Face> x_faces_;
  std::vector<Face> y_faces_;
  std::vector<CellClosure> closures_;
  std::vector<double> speed_x_;
  std::vector<double> speed_y_;
};

// Serial, unbuffered reference: recomputes every face per cell. Same per-cell arithmetic as
// RhsOperator, so the two agree bitwise.
RhsResult assemble_rhs_reference(StateField& state, const Grid2D& grid, const BoundarySpec& bc,
                                 const PhysParams& params, const SchemeOptions& options, StateField& rhs);

}  // namespace sedflow
