#pragma once

#include <array>

#include "sedflow/grid.hpp"
#include "sedflow/types.hpp"

namespace sedflow {

// Physical constants and closure coefficients. Defaults follow the reference
// parameter table (rho_w=1000, rho_s=2650, phi=0.015, nu=1.2e-5, p=0.4,
// g=9.8, d50=1e-3, n=0.028, m=2).
struct PhysParams {
  double rho_w = 1000.0;     // water density [kg/m^3]
  double rho_s = 2650.0;     // sediment density [kg/m^3]
  double g = 9.8;            // gravity [m/s^2]
  double porosity = 0.4;     // bed porosity p [-]
  double manning = 0.028;    // Manning n [s/m^(1/3)]
  double d50 = 0.001;        // median grain diameter [m]
  double nu = 0.000012;      // kinematic viscosity [m^2/s]
  double phi_e = 0.015;      // erosion-force coefficient [m^1.2]
  double hindered_m = 2.0;   // hindered-settling exponent [-]
  double kappa = 0.4;        // von Karman constant
  double nu_m = 1.0e-6;      // concentration diffusivity [m^2/s]
  double grass_a = 0.001;    // bedload law Q_b = a |u|^b
  double grass_b = 3.0;
  double fr_clamp = 1.0e-3;  // floor on |1 - Fr^2| and resonance band width
  double h_cut = 1.0e-10;    // dry tolerance [m]
  double h_exchange = 1.0e-3; // no erosion or deposition at or below this depth [m]
  bool fs_unity_at_rest = true;  // transport-mode parameter when u_* = 0

  double delta_rho() const { return rho_s - rho_w; }
  double submerged_gravity() const { return rho_s / rho_w - 1.0; }
  // Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const PhysParams&) const = default;
};

// Velocities and concentration with the dry-cell desingularization applied.
struct Primitive {
  double h;
  double u;
  double v;
  double c;
};

Primitive primitive(const ConservedState& w, const PhysParams& p);

double mixture_density(double c, const PhysParams& p);

Vec5 flux(const ConservedState& w, Axis axis, const PhysParams& p);

// Coefficient vectors of d(Zb), d(hC), d(h) in each direction.
struct NonconsVectors {
  Vec5 b1x, b2x, b3x;
  Vec5 b1y, b2y, b3y;
};

NonconsVectors noncons_vectors(const ConservedState& w, const PhysParams& p);

struct BedCelerity {
  double ub = 0.0;
  double vb = 0.0;
  bool clamped = false;  // |1 - Fr^2| hit the fr_clamp floor
};

// Bedform advection velocity from Q_b = a|u|^b, differentiated in h at fixed discharge.
BedCelerity bed_celerity(const ConservedState& w, const PhysParams& p);
BedCelerity bed_celerity(const Primitive& q, const PhysParams& p);

struct Eigenvalues {
  std::array<double, 5> lambda{};  // {u_b.n, u.n, u.n, u.n - c, u.n + c}
  bool resonance = false;
};

Eigenvalues eigenvalues(const ConservedState& w, std::array<double, 2> bed_velocity, std::array<double, 2> normal,
                        const PhysParams& p);
Eigenvalues eigenvalues(const ConservedState& w, std::array<double, 2> normal, const PhysParams& p);

using Mat5 = std::array<std::array<double, 5>, 5>;

// Quasi-linear matrix A(W) = dF/dW + nonconservative columns, for the given axis.
Mat5 quasilinear_matrix(const ConservedState& w, Axis axis, const PhysParams& p);

double friction_coefficient(double h, const PhysParams& p);

struct SedimentClosures {
  double u_star = 0.0;
  double theta = 0.0;
  double theta_cr = 0.0;
  double d_star = 0.0;
  double w_s = 0.0;
  double f_s = 1.0;
  double rouse_z = 0.0;
  double c_a = 0.0;
  double erosion = 0.0;
  double deposition = 0.0;
  double s = 0.0;
};

double settling_velocity(const PhysParams& p);
double dimensionless_grain_size(const PhysParams& p);
double critical_shields(double d_star);

// State-independent closure values.
struct SedimentConstants {
  double s = 0.0;
  double d_star = 0.0;
  double theta_cr = 0.0;
  double w_s = 0.0;
  double grain_factor = 0.0;  // d50^(-0.2)
};

SedimentConstants sediment_constants(const PhysParams& p);

SedimentClosures sediment_closures(const ConservedState& w, const PhysParams& p);
SedimentClosures sediment_closures(const ConservedState& w, const PhysParams& p, const SedimentConstants& k);

// Sum over interior cells of (h|u|^2/2 + g h^2/2 + g h Zb) dx dy.
double energy_diagnostic(const StateField& state, const Grid2D& grid, const PhysParams& p);

}  // namespace sedflow
