#include "sedflow/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace sedflow {

double aeno_weight(double d_minus, double d_plus, const AenoParams& aeno)
{
  const double r = std::abs(d_minus) / (std::abs(d_plus) + aeno.eps);
  return r / std::sqrt(aeno.l * aeno.l + r * r);
}

double aeno_slope(double d_minus, double d_plus, const AenoParams& aeno)
{
  const double beta = aeno_weight(d_minus, d_plus, aeno);
  return d_minus + beta * (d_plus - d_minus);
}

Vec5 cell_slope(const StateField& w, int i, int k, Axis axis, const Grid2D& grid, const AenoParams& aeno)
{
  const int di = axis == Axis::x ? 1 : 0;
  const int dk = axis == Axis::y ? 1 : 0;
  const double spacing = axis == Axis::x ? grid.dx() : grid.dy();
  Vec5 s;
  for (std::size_t m = 0; m < kNumVars; ++m) {
    const Field2D& f = w[m];
    const double c = f(i, k);
    const double d_minus = (c - f(i - di, k - dk)) / spacing;
    const double d_plus = (f(i + di, k + dk) - c) / spacing;
    s[m] = aeno_slope(d_minus, d_plus, aeno);
  }
  // Scaling the bed slope with the depth slope keeps a flat free surface flat.
  const double h = w[kH](i, k);
  const double cap = h > 0.0 ? 2.0 * h / spacing : 0.0;
  if (std::abs(s[kH]) > cap) {
    s[kZB] *= cap / std::abs(s[kH]);
    s[kH] = std::copysign(cap, s[kH]);
  }
  return s;
}

InterfacePair extrapolate(const ConservedState& lower, const Vec5& lower_slope, const ConservedState& upper,
                          const Vec5& upper_slope, double spacing, const PhysParams& p)
{
  InterfacePair pair;
  const double half = 0.5 * spacing;
  for (std::size_t m = 0; m < kNumVars; ++m) {
    pair.minus[m] = lower[m] + lower_slope[m] * half;
    pair.plus[m] = upper[m] - upper_slope[m] * half;
  }
  pair.prim_minus = primitive(pair.minus, p);
  pair.prim_plus = primitive(pair.plus, p);
  return pair;
}

namespace {

ConservedState rebuild(double h, double zb, const ConservedState& raw, const PhysParams& p)
{
  const Primitive q = primitive(raw, p);
  return {h, h * q.u, h * q.v, h * q.c, zb};
}

}  // namespace

InterfacePair hydrostatic_correct(const InterfacePair& raw, const PhysParams& p)
{
  const double eta_minus = raw.eta_minus();
  const double eta_plus = raw.eta_plus();
  const double bed_max = std::max(raw.minus[kZB], raw.plus[kZB]);
  const double zb_minus = std::min(bed_max, eta_minus);
  const double zb_plus = std::min(bed_max, eta_plus);
  const double zb_face = std::max(zb_minus, zb_plus);
  const double h_minus = std::max(0.0, std::min(eta_minus - zb_face, raw.minus[kH]));
  const double h_plus = std::max(0.0, std::min(eta_plus - zb_face, raw.plus[kH]));

  InterfacePair out;
  out.minus = rebuild(h_minus, zb_minus, raw.minus, p);
  out.plus = rebuild(h_plus, zb_plus, raw.plus, p);
  out.prim_minus = primitive(out.minus, p);
  out.prim_plus = primitive(out.plus, p);
  return out;
}

InterfacePair reconstruct_face(const StateField& w, int i, int k, Axis axis, const Grid2D& grid,
                               const AenoParams& aeno, const PhysParams& p)
{
  const int i2 = axis == Axis::x ? i + 1 : i;
  const int k2 = axis == Axis::y ? k + 1 : k;
  const double spacing = axis == Axis::x ? grid.dx() : grid.dy();
  const Vec5 s_lower = cell_slope(w, i, k, axis, grid, aeno);
  const Vec5 s_upper = cell_slope(w, i2, k2, axis, grid, aeno);
  return hydrostatic_correct(extrapolate(w.at(i, k), s_lower, w.at(i2, k2), s_upper, spacing, p), p);
}

}  // namespace sedflow
