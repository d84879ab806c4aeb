#include "sedflow/physics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sedflow {

void PhysParams::validate() const
{
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(std::string(key) + ": " + what);
  };
  require(rho_w > 0.0, "rho_w", "must be positive");
  require(rho_s > rho_w, "rho_s", "must exceed rho_w");
  require(g > 0.0, "g", "must be positive");
  require(porosity > 0.0 && porosity < 1.0, "porosity", "must lie in (0, 1)");
  require(manning >= 0.0, "manning", "must be non-negative");
  require(d50 > 0.0, "d50", "must be positive");
  require(nu > 0.0, "nu", "must be positive");
  require(phi_e >= 0.0, "phi_e", "must be non-negative");
  require(hindered_m >= 0.0, "hindered_m", "must be non-negative");
  require(kappa > 0.0, "kappa", "must be positive");
  require(nu_m >= 0.0, "nu_m", "must be non-negative");
  require(grass_a >= 0.0, "grass_a", "must be non-negative");
  require(fr_clamp > 0.0, "fr_clamp", "must be positive");
  require(h_cut > 0.0, "h_cut", "must be positive");
  require(h_exchange >= 0.0, "h_exchange", "must be non-negative");
}

Primitive primitive(const ConservedState& w, const PhysParams& p)
{
  const double h = w[kH];
  if (!(h > p.h_cut)) return {std::max(h, 0.0), 0.0, 0.0, 0.0};
  return {h, w[kHU] / h, w[kHV] / h, std::clamp(w[kHC] / h, 0.0, 1.0)};
}

namespace {

// x^e, by repeated multiplication for small whole exponents.
double power(double x, double e)
{
  if (e == 2.0) return x * x;
  if (e == 3.0) return x * x * x;
  if (e == 1.0) return x;
  if (e == 0.0) return 1.0;
  return std::pow(x, e);
}

double density(double c, const PhysParams& p) { return p.rho_w * (1.0 - c) + p.rho_s * c; }

// delta_rho / (2 rho), the weight of the concentration-gradient pressure terms.
double density_ratio(double c, const PhysParams& p) { return p.delta_rho() / (2.0 * density(c, p)); }

}  // namespace

double mixture_density(double c, const PhysParams& p)
{
  if (!(c >= 0.0 && c <= 1.0)) throw ContractViolation("mixture_density: concentration outside [0, 1]");
  return density(c, p);
}

Vec5 flux(const ConservedState& w, Axis axis, const PhysParams& p)
{
  const Primitive q = primitive(w, p);
  const double wet = w[kH] > p.h_cut ? 1.0 : 0.0;
  const double pressure = 0.5 * p.g * q.h * q.h;
  if (axis == Axis::x) {
    const double hu = wet * w[kHU];
    return {hu, hu * q.u + pressure, hu * q.v, hu * q.c, 0.0};
  }
  const double hv = wet * w[kHV];
  return {hv, hv * q.u, hv * q.v + pressure, hv * q.c, 0.0};
}

BedCelerity bed_celerity(const ConservedState& w, const PhysParams& p) { return bed_celerity(primitive(w, p), p); }

BedCelerity bed_celerity(const Primitive& q, const PhysParams& p)
{
  const double speed = std::sqrt(q.u * q.u + q.v * q.v);
  if (!(q.h > p.h_cut) || speed == 0.0) return {};

  // dQ_b/dh at fixed discharge: Q_b = a (q/h)^b  =>  -b a |u|^b / h
  const double dq_dh = -p.grass_b * p.grass_a * power(speed, p.grass_b) / q.h;
  double denom = 1.0 - speed * speed / (p.g * q.h);
  bool clamped = false;
  if (std::abs(denom) < p.fr_clamp) {
    denom = denom < 0.0 ? -p.fr_clamp : p.fr_clamp;
    clamped = true;
  }
  const double magnitude = dq_dh / ((1.0 - p.porosity) * denom);
  return {magnitude * q.u / speed, magnitude * q.v / speed, clamped};
}

NonconsVectors noncons_vectors(const ConservedState& w, const PhysParams& p)
{
  const Primitive q = primitive(w, p);
  const BedCelerity ub = bed_celerity(w, p);
  const double gh = p.g * q.h;
  const double k = density_ratio(q.c, p);
  NonconsVectors b{};
  b.b1x = {0.0, gh, 0.0, 0.0, ub.ub};
  b.b2x = {0.0, gh * k, 0.0, 0.0, 0.0};
  b.b3x = {0.0, -gh * q.c * k, 0.0, 0.0, 0.0};
  b.b1y = {0.0, 0.0, gh, 0.0, ub.vb};
  b.b2y = {0.0, 0.0, gh * k, 0.0, 0.0};
  b.b3y = {0.0, 0.0, -gh * q.c * k, 0.0, 0.0};
  return b;
}

Eigenvalues eigenvalues(const ConservedState& w, std::array<double, 2> bed_velocity, std::array<double, 2> normal,
                        const PhysParams& p)
{
  if (w[kH] < 0.0) throw ContractViolation("eigenvalues: negative depth");
  const Primitive q = primitive(w, p);
  const double un = q.u * normal[0] + q.v * normal[1];
  const double ubn = bed_velocity[0] * normal[0] + bed_velocity[1] * normal[1];
  const double gh = p.g * q.h;
  const double c = std::sqrt(gh);
  Eigenvalues e;
  e.lambda = {ubn, un, un, un - c, un + c};
  const double rel = un - ubn;
  e.resonance = std::abs(rel * rel - gh) < p.fr_clamp * gh;
  return e;
}

Eigenvalues eigenvalues(const ConservedState& w, std::array<double, 2> normal, const PhysParams& p)
{
  const BedCelerity ub = bed_celerity(w, p);
  return eigenvalues(w, {ub.ub, ub.vb}, normal, p);
}

Mat5 quasilinear_matrix(const ConservedState& w, Axis axis, const PhysParams& p)
{
  const Primitive q = primitive(w, p);
  const BedCelerity ub = bed_celerity(w, p);
  const double gh = p.g * q.h;
  const double k = density_ratio(q.c, p);
  Mat5 a{};
  if (axis == Axis::x) {
    a[0] = {0.0, 1.0, 0.0, 0.0, 0.0};
    a[1] = {-q.u * q.u + gh - k * gh * q.c, 2.0 * q.u, 0.0, k * gh, gh};
    a[2] = {-q.u * q.v, q.v, q.u, 0.0, 0.0};
    a[3] = {-q.u * q.c, q.c, 0.0, q.u, 0.0};
    a[4] = {0.0, 0.0, 0.0, 0.0, ub.ub};
  } else {
    a[0] = {0.0, 0.0, 1.0, 0.0, 0.0};
    a[1] = {-q.u * q.v, q.v, q.u, 0.0, 0.0};
    a[2] = {-q.v * q.v + gh - k * gh * q.c, 0.0, 2.0 * q.v, k * gh, gh};
    a[3] = {-q.v * q.c, 0.0, q.c, q.v, 0.0};
    a[4] = {0.0, 0.0, 0.0, 0.0, ub.vb};
  }
  return a;
}

double friction_coefficient(double h, const PhysParams& p)
{
  return p.manning * p.manning * p.g / std::cbrt(std::max(h, p.h_cut));
}

double settling_velocity(const PhysParams& p)
{
  const double visc = 13.95 * p.nu / p.d50;
  return std::sqrt(visc * visc + 1.09 * p.submerged_gravity() * p.g * p.d50) - visc;
}

double dimensionless_grain_size(const PhysParams& p)
{
  return p.d50 * std::cbrt(p.submerged_gravity() * p.g / (p.nu * p.nu));
}

double critical_shields(double d_star)
{
  return 0.3 / (1.0 + 1.2 * d_star) + 0.055 * (1.0 - std::exp(-0.02 * d_star));
}

SedimentConstants sediment_constants(const PhysParams& p)
{
  SedimentConstants k;
  k.s = p.submerged_gravity();
  k.d_star = dimensionless_grain_size(p);
  k.theta_cr = critical_shields(k.d_star);
  k.w_s = settling_velocity(p);
  k.grain_factor = std::pow(p.d50, -0.2);
  return k;
}

SedimentClosures sediment_closures(const ConservedState& w, const PhysParams& p)
{
  return sediment_closures(w, p, sediment_constants(p));
}

SedimentClosures sediment_closures(const ConservedState& w, const PhysParams& p, const SedimentConstants& k)
{
  const Primitive q = primitive(w, p);
  SedimentClosures s;
  s.s = k.s;
  s.d_star = k.d_star;
  s.theta_cr = k.theta_cr;
  s.w_s = k.w_s;
  s.f_s = p.fs_unity_at_rest ? 1.0 : 0.0;
  s.rouse_z = std::numeric_limits<double>::infinity();
  if (!(q.h > p.h_cut)) return s;

  const double speed2 = q.u * q.u + q.v * q.v;
  s.u_star = std::sqrt(friction_coefficient(q.h, p) * speed2);
  s.theta = s.u_star * s.u_star / (p.g * s.s * p.d50);
  if (s.u_star > 0.0) {
    s.rouse_z = s.w_s / (p.kappa * s.u_star);
    s.f_s = std::min(1.0, 2.5 * std::exp(-s.rouse_z));
  }
  // alpha_c * C with alpha_c = min(2, (1 - p)/C)
  s.c_a = std::clamp(std::min(2.0 * q.c, 1.0 - p.porosity), 0.0, 1.0);
  if (!(q.h > p.h_exchange)) return s;
  if (s.theta >= s.theta_cr) s.erosion = p.phi_e * (s.theta - s.theta_cr) / q.h * std::sqrt(speed2) * k.grain_factor;
  s.deposition = s.w_s * power(1.0 - s.c_a, p.hindered_m) * s.c_a;
  return s;
}

double energy_diagnostic(const StateField& st, const Grid2D& grid, const PhysParams& p)
{
  double total = 0.0;
  for (int k = 0; k < grid.ny(); ++k) {
    for (int i = 0; i < grid.nx(); ++i) {
      const ConservedState w = st.at(i, k);
      const Primitive q = primitive(w, p);
      const double kinetic = 0.5 * q.h * (q.u * q.u + q.v * q.v);
      total += kinetic + 0.5 * p.g * q.h * q.h + p.g * q.h * w[kZB];
    }
  }
  return total * grid.cell_area();
}

}  // namespace sedflow
