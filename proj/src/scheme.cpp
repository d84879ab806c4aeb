#include "sedflow/scheme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace sedflow {

namespace {

std::size_t normal_component(Axis axis) { return axis == Axis::x ? kHU : kHV; }

double normal_velocity(const Primitive& q, Axis axis) { return axis == Axis::x ? q.u : q.v; }

double normal_bed_velocity(const Primitive& q, const PhysParams& p, Axis axis)
{
  const BedCelerity b = bed_celerity(q, p);
  return axis == Axis::x ? b.ub : b.vb;
}

struct Rule {
  std::array<double, 3> node;
  std::array<double, 3> weight;
  int n;
};

Rule rule(Quadrature q)
{
  const double off = std::sqrt(15.0) / 10.0;
  switch (q) {
    case Quadrature::gauss3: return {{0.5, 0.5 - off, 0.5 + off}, {8.0 / 18.0, 5.0 / 18.0, 5.0 / 18.0}, 3};
    case Quadrature::single_point: return {{0.5, 0.0, 0.0}, {8.0 / 18.0, 0.0, 0.0}, 1};
    case Quadrature::midpoint: break;
  }
  return {{0.5, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1};
}

// Flux without the hydrostatic pressure part.
Vec5 advective_flux(const ConservedState& w, const Primitive& q, Axis axis, const PhysParams& p)
{
  const double wet = w[kH] > p.h_cut ? 1.0 : 0.0;
  const double qn = wet * w[normal_component(axis)];
  return {qn, qn * q.u, qn * q.v, qn * q.c, 0.0};
}

Vec5 jump(const ConservedState& from, const Primitive& qa, const ConservedState& to, const Primitive& qb,
          const Vec5& b_psi, const PhysParams& p, Axis axis)
{
  const Vec5 fa = advective_flux(from, qa, axis, p);
  const Vec5 fb = advective_flux(to, qb, axis, p);
  Vec5 j;
  for (std::size_t m = 0; m < kNumVars; ++m) j[m] = (fb[m] - fa[m]) + b_psi[m];
  const std::size_t n = normal_component(axis);
  j[n] += p.g * 0.5 * (from[kH] + to[kH]) * (to[kH] - from[kH]);
  return j;
}

// D-, D+ and optionally the central-upwind flux.
Fluctuation split(const InterfacePair& pair, const Speeds& speeds, const Vec5& b_psi, const PhysParams& p, Axis axis,
                  bool with_flux)
{
  Fluctuation f;
  f.b_psi = b_psi;
  const double ap = speeds.plus;
  const double am = speeds.minus;
  const double span = ap - am;
  if (!(span > 0.0)) return f;

  const double l1 = (ap + am) / span;
  const double l0 = -2.0 * ap * am / span;
  const Vec5 j = jump(pair.minus, pair.prim_minus, pair.plus, pair.prim_plus, b_psi, p, axis);
  const Vec5 dw = pair.plus - pair.minus;
  for (std::size_t m = 0; m < kNumVars; ++m) {
    f.d_minus[m] = 0.5 * (1.0 - l1) * j[m] - 0.5 * l0 * dw[m];
    f.d_plus[m] = 0.5 * (1.0 + l1) * j[m] + 0.5 * l0 * dw[m];
  }
  const std::size_t n = normal_component(axis);
  const double qm = pair.minus[kH] > p.h_cut ? pair.minus[n] : 0.0;
  const double qp = pair.plus[kH] > p.h_cut ? pair.plus[n] : 0.0;
  f.mass_flux = (ap * qm - am * qp) / span + ap * am / span * dw[kH];
  if (with_flux) {
    const Vec5 fm = flux(pair.minus, axis, p);
    const Vec5 fp = flux(pair.plus, axis, p);
    for (std::size_t m = 0; m < kNumVars; ++m)
      f.cu_flux[m] = (ap * fm[m] - am * fp[m]) / span + ap * am / span * dw[m];
  }
  return f;
}

}  // namespace

Speeds local_speeds(const InterfacePair& pair, const PhysParams& p, Axis axis, bool include_bed)
{
  const double um = normal_velocity(pair.prim_minus, axis);
  const double up = normal_velocity(pair.prim_plus, axis);
  const double cm = std::sqrt(p.g * pair.prim_minus.h);
  const double cp = std::sqrt(p.g * pair.prim_plus.h);
  Speeds s;
  s.plus = std::max({um + cm, up + cp, up, um, 0.0});
  s.minus = std::min({um - cm, up - cp, up, um, 0.0});
  if (include_bed) {
    const double bm = normal_bed_velocity(pair.prim_minus, p, axis);
    const double bp = normal_bed_velocity(pair.prim_plus, p, axis);
    s.plus = std::max({s.plus, bm, bp});
    s.minus = std::min({s.minus, bm, bp});
  }
  return s;
}

Vec5 path_integral(const ConservedState& from, const ConservedState& to, const PhysParams& p, Axis axis,
                   Quadrature quad)
{
  Vec5 b{};
  const double dh = to[kH] - from[kH];
  const double dhc = to[kHC] - from[kHC];
  const double dzb = to[kZB] - from[kZB];
  const std::size_t n = normal_component(axis);
  b[n] = p.g * 0.5 * (from[kH] + to[kH]) * dzb;

  // h(s)[hC] - hC(s)[h] does not depend on s along a segment.
  const double cross = from[kH] * dhc - from[kHC] * dh;
  if (cross == 0.0 && dzb == 0.0) return b;

  const Rule r = rule(quad);
  const Vec5 dw = to - from;
  double k_int = 0.0;
  double ub_int = 0.0;
  for (int q = 0; q < r.n; ++q) {
    const Primitive pw = primitive(from + r.node[q] * dw, p);
    if (cross != 0.0) k_int += r.weight[q] * p.delta_rho() / (2.0 * mixture_density(pw.c, p));
    if (dzb != 0.0) ub_int += r.weight[q] * normal_bed_velocity(pw, p, axis);
  }
  b[n] += p.g * cross * k_int;
  b[kZB] = ub_int * dzb;
  return b;
}

Vec5 path_integral(const InterfacePair& pair, const PhysParams& p, Axis axis, Quadrature quad)
{
  return path_integral(pair.minus, pair.plus, p, axis, quad);
}

double wb_topography(const InterfacePair& pair, const PhysParams& p)
{
  return -p.g * 0.5 * (pair.minus[kH] + pair.plus[kH]) * (pair.plus[kH] - pair.minus[kH]);
}

Vec5 total_jump(const ConservedState& from, const ConservedState& to, const Vec5& b_psi, const PhysParams& p,
                Axis axis)
{
  return jump(from, primitive(from, p), to, primitive(to, p), b_psi, p, axis);
}

Fluctuation fluctuations(const InterfacePair& pair, const Speeds& speeds, const Vec5& b_psi, const PhysParams& p,
                         Axis axis)
{
  return split(pair, speeds, b_psi, p, axis, true);
}

Vec5 local_source(const ConservedState& w, const PhysParams& p, const SchemeOptions& opt)
{
  return local_source(w, p, opt, sediment_constants(p));
}

Vec5 local_source(const ConservedState& w, const PhysParams& p, const SchemeOptions& opt, const SedimentConstants& k)
{
  Vec5 s{};
  const Primitive q = primitive(w, p);
  if (!(q.h > p.h_cut)) return s;
  if (opt.exchange) {
    const SedimentClosures cl = sediment_closures(w, p, k);
    const double ed = cl.erosion - cl.deposition;
    const double bulk = ed / (1.0 - p.porosity);
    s[kH] = bulk;
    s[kHU] = -bulk * q.u;
    s[kHV] = -bulk * q.v;
    s[kHC] = ed;
    s[kZB] = -bulk;
  }
  if (opt.friction && !opt.implicit_friction) {
    const double drag = friction_coefficient(q.h, p) * std::sqrt(q.u * q.u + q.v * q.v);
    s[kHU] -= drag * q.u;
    s[kHV] -= drag * q.v;
  }
  return s;
}

void apply_friction(StateField& s, const Grid2D& grid, const PhysParams& p, double dt)
{
  const int nx = grid.nx();
  const int ny = grid.ny();
#pragma omp parallel for schedule(static)
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const double h = s[kH](i, k);
      if (!(h > p.h_cut)) continue;
      const double u = s[kHU](i, k) / h;
      const double v = s[kHV](i, k) / h;
      const double factor = 1.0 + dt * friction_coefficient(h, p) * std::sqrt(u * u + v * v) / h;
      s[kHU](i, k) /= factor;
      s[kHV](i, k) /= factor;
    }
  }
}

CellClosure cell_closure(const ConservedState& w, const PhysParams& p)
{
  return cell_closure(w, p, sediment_constants(p));
}

CellClosure cell_closure(const ConservedState& w, const PhysParams& p, const SedimentConstants& k)
{
  const SedimentClosures cl = sediment_closures(w, p, k);
  const Primitive q = primitive(w, p);
  return {cl.erosion - cl.deposition, cl.f_s * q.h, q.c};
}

double diffusion_source(const CellClosure& centre, const CellClosure& west, const CellClosure& east,
                        const CellClosure& south, const CellClosure& north, const Grid2D& grid, const PhysParams& p)
{
  const double dx = grid.dx();
  const double dy = grid.dy();
  const double fe = 0.5 * (centre.fs_h + east.fs_h) * p.nu_m * (east.c - centre.c) / dx;
  const double fw = 0.5 * (west.fs_h + centre.fs_h) * p.nu_m * (centre.c - west.c) / dx;
  const double fn = 0.5 * (centre.fs_h + north.fs_h) * p.nu_m * (north.c - centre.c) / dy;
  const double fsouth = 0.5 * (south.fs_h + centre.fs_h) * p.nu_m * (centre.c - south.c) / dy;
  return (fe - fw) / dx + (fn - fsouth) / dy;
}

namespace {

struct FaceResult {
  InterfacePair pair;
  Fluctuation fluct;
  double speed = 0.0;
};

FaceResult face_kernel(const InterfacePair& raw, const PhysParams& p, const SchemeOptions& opt, Axis axis)
{
  FaceResult r;
  r.pair = hydrostatic_correct(raw, p);
  const Speeds s = local_speeds(r.pair, p, axis, opt.nonconservative);
  const Vec5 b = opt.nonconservative ? path_integral(r.pair, p, axis, opt.quadrature) : Vec5{};
  r.fluct = split(r.pair, s, b, p, axis, false);
  r.speed = std::max(s.plus, -s.minus);
  return r;
}

// Jump across the reconstructed profile inside one cell, from its low face to its high face.
Vec5 cell_jump(const ConservedState& low, const Primitive& q_low, const ConservedState& high,
               const Primitive& q_high, const PhysParams& p, const SchemeOptions& opt, Axis axis)
{
  const Vec5 b = opt.nonconservative ? path_integral(low, high, p, axis, opt.quadrature) : Vec5{};
  return jump(low, q_low, high, q_high, b, p, axis);
}

struct CellFaces {
  const Vec5& dm_east;
  const Vec5& dp_west;
  const Vec5& dm_north;
  const Vec5& dp_south;
  double mass_east;
  double mass_west;
  double mass_north;
  double mass_south;
};

// The h row has no nonconservative part, so its fluctuation sum telescopes to the flux difference.
// Assembling it that way keeps near-dry cells from picking up cancellation error from their neighbours.
ConservedState cell_rhs(const CellFaces& f, const Vec5& jx, const Vec5& jy, const Vec5& src, double dx, double dy)
{
  ConservedState out;
  out[kH] = -(f.mass_east - f.mass_west) / dx - (f.mass_north - f.mass_south) / dy + src[kH];
  for (std::size_t m = 1; m < kNumVars; ++m) {
    const double rx = (f.dm_east[m] + f.dp_west[m]) + jx[m];
    const double ry = (f.dm_north[m] + f.dp_south[m]) + jy[m];
    out[m] = -rx / dx - ry / dy + src[m];
  }
  return out;
}

void check_finite(const StateField& rhs, const Grid2D& grid)
{
  long long bad = std::numeric_limits<long long>::max();
  const int nx = grid.nx();
  const int ny = grid.ny();
#pragma omp parallel for schedule(static) reduction(min : bad)
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      for (std::size_t m = 0; m < kNumVars; ++m) {
        if (!std::isfinite(rhs[m](i, k))) {
          bad = std::min(bad, static_cast<long long>(k) * nx + i);
          break;
        }
      }
    }
  }
  if (bad == std::numeric_limits<long long>::max()) return;
  const int i = static_cast<int>(bad % nx);
  const int k = static_cast<int>(bad / nx);
  throw NumericalFailure("non-finite right-hand side at cell (" + std::to_string(i) + ", " + std::to_string(k) +
                         ")");
}

}  // namespace

RhsOperator::RhsOperator(const Grid2D& grid, const BoundarySpec& bc, const PhysParams& params,
                         const SchemeOptions& options)
    : grid_(grid),
      bc_(bc),
      params_(params),
      opt_(options),
      constants_(sediment_constants(params)),
      slope_x_(grid.padded_size()),
      slope_y_(grid.padded_size()),
      x_faces_(static_cast<std::size_t>(grid.nx() + 1) * grid.ny()),
      y_faces_(static_cast<std::size_t>(grid.ny() + 1) * grid.nx()),
      closures_(grid.padded_size()),
      speed_x_(x_faces_.size()),
      speed_y_(y_faces_.size())
{
  bc_.validate();
  params_.validate();
}

std::size_t RhsOperator::x_face_index(int i, int k) const
{
  return static_cast<std::size_t>(k) * (grid_.nx() + 1) + static_cast<std::size_t>(i + 1);
}

std::size_t RhsOperator::y_face_index(int i, int k) const
{
  return static_cast<std::size_t>(k + 1) * grid_.nx() + static_cast<std::size_t>(i);
}

void RhsOperator::relax(StateField& state, double dt) const
{
  if (opt_.friction && opt_.implicit_friction) apply_friction(state, grid_, params_, dt);
}

RhsResult RhsOperator::operator()(StateField& w, StateField& rhs)
{
  if (!w[kH].matches(grid_) || !rhs[kH].matches(grid_))
    throw ContractViolation("rhs: state dimensions do not match grid");
  fill_ghosts(w, grid_, bc_);
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  const double dx = grid_.dx();
  const double dy = grid_.dy();
  const PhysParams& p = params_;
  const bool need_closures = opt_.diffusion;

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int k = -1; k <= ny; ++k) {
      for (int i = -1; i <= nx; ++i) {
        const std::size_t c = grid_.index(i, k);
        if (need_closures) closures_[c] = cell_closure(w.at(i, k), p, constants_);
        if (k >= 0 && k < ny) slope_x_[c] = cell_slope(w, i, k, Axis::x, grid_, opt_.aeno);
        if (i >= 0 && i < nx) slope_y_[c] = cell_slope(w, i, k, Axis::y, grid_, opt_.aeno);
      }
    }

#pragma omp for schedule(static)
    for (int k = 0; k < ny; ++k) {
      for (int i = -1; i < nx; ++i) {
        const InterfacePair raw = extrapolate(w.at(i, k), slope_x_[grid_.index(i, k)], w.at(i + 1, k),
                                              slope_x_[grid_.index(i + 1, k)], dx, p);
        const FaceResult r = face_kernel(raw, p, opt_, Axis::x);
        const std::size_t f = x_face_index(i, k);
        x_faces_[f] = {r.fluct.d_minus, r.fluct.d_plus, r.fluct.mass_flux, r.pair};
        speed_x_[f] = r.speed;
      }
    }

#pragma omp for schedule(static)
    for (int k = -1; k < ny; ++k) {
      for (int i = 0; i < nx; ++i) {
        const InterfacePair raw = extrapolate(w.at(i, k), slope_y_[grid_.index(i, k)], w.at(i, k + 1),
                                              slope_y_[grid_.index(i, k + 1)], dy, p);
        const FaceResult r = face_kernel(raw, p, opt_, Axis::y);
        const std::size_t f = y_face_index(i, k);
        y_faces_[f] = {r.fluct.d_minus, r.fluct.d_plus, r.fluct.mass_flux, r.pair};
        speed_y_[f] = r.speed;
      }
    }

#pragma omp for schedule(static)
    for (int k = 0; k < ny; ++k) {
      for (int i = 0; i < nx; ++i) {
        const Face& west = x_faces_[x_face_index(i - 1, k)];
        const Face& east = x_faces_[x_face_index(i, k)];
        const Face& south = y_faces_[y_face_index(i, k - 1)];
        const Face& north = y_faces_[y_face_index(i, k)];
        const Vec5 jx = cell_jump(west.pair.plus, west.pair.prim_plus, east.pair.minus, east.pair.prim_minus, p,
                                  opt_, Axis::x);
        const Vec5 jy = cell_jump(south.pair.plus, south.pair.prim_plus, north.pair.minus, north.pair.prim_minus,
                                  p, opt_, Axis::y);
        Vec5 src = local_source(w.at(i, k), p, opt_, constants_);
        if (opt_.diffusion) {
          src[kHC] += diffusion_source(closures_[grid_.index(i, k)], closures_[grid_.index(i - 1, k)],
                                       closures_[grid_.index(i + 1, k)], closures_[grid_.index(i, k - 1)],
                                       closures_[grid_.index(i, k + 1)], grid_, p);
        }
        const CellFaces faces{east.d_minus,    west.d_plus,     north.d_minus,    south.d_plus,
                              east.mass_flux, west.mass_flux, north.mass_flux, south.mass_flux};
        rhs.set(i, k, cell_rhs(faces, jx, jy, src, dx, dy));
      }
    }
  }

  check_finite(rhs, grid_);
  RhsResult res;
  for (double s : speed_x_) res.max_speed_x = std::max(res.max_speed_x, s);
  for (double s : speed_y_) res.max_speed_y = std::max(res.max_speed_y, s);
  return res;
}

RhsResult assemble_rhs_reference(StateField& w, const Grid2D& grid, const BoundarySpec& bc, const PhysParams& p,
                                 const SchemeOptions& opt, StateField& rhs)
{
  bc.validate();
  p.validate();
  if (!w[kH].matches(grid) || !rhs[kH].matches(grid))
    throw ContractViolation("rhs: state dimensions do not match grid");
  fill_ghosts(w, grid, bc);
  const SedimentConstants constants = sediment_constants(p);
  const double dx = grid.dx();
  const double dy = grid.dy();
  RhsResult res;
  auto face = [&](int i, int k, Axis axis) {
    const int i2 = axis == Axis::x ? i + 1 : i;
    const int k2 = axis == Axis::y ? k + 1 : k;
    const InterfacePair raw =
        extrapolate(w.at(i, k), cell_slope(w, i, k, axis, grid, opt.aeno), w.at(i2, k2),
                    cell_slope(w, i2, k2, axis, grid, opt.aeno), axis == Axis::x ? dx : dy, p);
    const FaceResult r = face_kernel(raw, p, opt, axis);
    if (axis == Axis::x)
      res.max_speed_x = std::max(res.max_speed_x, r.speed);
    else
      res.max_speed_y = std::max(res.max_speed_y, r.speed);
    return r;
  };

  for (int k = 0; k < grid.ny(); ++k) {
    for (int i = 0; i < grid.nx(); ++i) {
      const FaceResult west = face(i - 1, k, Axis::x);
      const FaceResult east = face(i, k, Axis::x);
      const FaceResult south = face(i, k - 1, Axis::y);
      const FaceResult north = face(i, k, Axis::y);
      const Vec5 jx = cell_jump(west.pair.plus, west.pair.prim_plus, east.pair.minus, east.pair.prim_minus, p, opt,
                                Axis::x);
      const Vec5 jy = cell_jump(south.pair.plus, south.pair.prim_plus, north.pair.minus, north.pair.prim_minus, p,
                                opt, Axis::y);
      Vec5 src = local_source(w.at(i, k), p, opt, constants);
      if (opt.diffusion) {
        auto cl = [&](int a, int b) { return cell_closure(w.at(a, b), p, constants); };
        src[kHC] += diffusion_source(cl(i, k), cl(i - 1, k), cl(i + 1, k), cl(i, k - 1), cl(i, k + 1), grid, p);
      }
      const CellFaces faces{east.fluct.d_minus,   west.fluct.d_plus,   north.fluct.d_minus,
                            south.fluct.d_plus,   east.fluct.mass_flux, west.fluct.mass_flux,
                            north.fluct.mass_flux, south.fluct.mass_flux};
      rhs.set(i, k, cell_rhs(faces, jx, jy, src, dx, dy));
    }
  }
  check_finite(rhs, grid);
  return res;
}

}  // namespace sedflow
