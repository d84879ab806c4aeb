#pragma once

// Independent reference computations shared by the unit tests and the acceptance suite.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "sedflow/grid.hpp"
#include "sedflow/physics.hpp"
#include "sedflow/reconstruction.hpp"
#include "sedflow/scheme.hpp"

namespace oracle {

using sedflow::Axis;
using sedflow::ConservedState;
using sedflow::Mat5;
using sedflow::PhysParams;
using sedflow::Vec5;

class Rng {
 public:
  explicit Rng(unsigned long long seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }

 private:
  std::mt19937_64 gen_;
};

// h in [0.1, 5], |u| <= 3, C in [0, 0.3], Zb in [-1, 1].
inline ConservedState random_state(Rng& rng)
{
  const double h = rng.uniform(0.1, 5.0);
  const double speed = rng.uniform(0.0, 3.0);
  const double angle = rng.uniform(0.0, 2.0 * M_PI);
  const double c = rng.uniform(0.0, 0.3);
  return {h, h * speed * std::cos(angle), h * speed * std::sin(angle), h * c, rng.uniform(-1.0, 1.0)};
}

// Physical flux written out from its definition.
inline Vec5 flux(const ConservedState& w, Axis axis, double g)
{
  const double h = w[0];
  const double u = w[1] / h;
  const double v = w[2] / h;
  const double c = w[3] / h;
  if (axis == Axis::x) return {h * u, h * u * u + 0.5 * g * h * h, h * u * v, h * u * c, 0.0};
  return {h * v, h * u * v, h * v * v + 0.5 * g * h * h, h * v * c, 0.0};
}

// Central-difference Jacobian of the flux plus the nonconservative columns:
// column Zb gets B1, column hC gets B2, column h gets B3.
inline Mat5 assembled_matrix(const ConservedState& w, Axis axis, const PhysParams& p)
{
  Mat5 a{};
  for (std::size_t j = 0; j < 5; ++j) {
    const double step = 1e-6 * std::max(1.0, std::abs(w[j]));
    ConservedState up = w;
    ConservedState dn = w;
    up[j] += step;
    dn[j] -= step;
    const Vec5 fu = flux(up, axis, p.g);
    const Vec5 fd = flux(dn, axis, p.g);
    for (std::size_t r = 0; r < 5; ++r) a[r][j] = (fu[r] - fd[r]) / (2.0 * step);
  }
  const sedflow::NonconsVectors b = sedflow::noncons_vectors(w, p);
  const Vec5& b1 = axis == Axis::x ? b.b1x : b.b1y;
  const Vec5& b2 = axis == Axis::x ? b.b2x : b.b2y;
  const Vec5& b3 = axis == Axis::x ? b.b3x : b.b3y;
  for (std::size_t r = 0; r < 5; ++r) {
    a[r][4] += b1[r];
    a[r][3] += b2[r];
    a[r][0] += b3[r];
  }
  return a;
}

inline double determinant(Mat5 a)
{
  double det = 1.0;
  for (std::size_t c = 0; c < 5; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < 5; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    if (a[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < 5; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Max absolute row sum.
inline double norm_inf(const Mat5& a)
{
  double n = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    n = std::max(n, s);
  }
  return n;
}

inline Mat5 shifted(Mat5 a, double lambda)
{
  for (std::size_t r = 0; r < 5; ++r) a[r][r] -= lambda;
  return a;
}

// Plain 2D central-upwind scheme for the conservative sub-model (flat bed, no sources):
// AENO slopes of the conserved variables with the depth cap, CU flux from the one-sided
// gravity-wave speeds. Ghosts of `w` must already be filled.
class CentralUpwind {
 public:
  CentralUpwind(const sedflow::Grid2D& grid, double g, double l, double eps) : grid_(grid), g_(g), l_(l), eps_(eps) {}

  sedflow::StateField rhs(const sedflow::StateField& w) const
  {
    sedflow::StateField out(grid_);
    for (int k = 0; k < grid_.ny(); ++k) {
      for (int i = 0; i < grid_.nx(); ++i) {
        const Vec5 fe = face_flux(w, i, k, Axis::x);
        const Vec5 fw = face_flux(w, i - 1, k, Axis::x);
        const Vec5 gn = face_flux(w, i, k, Axis::y);
        const Vec5 gs = face_flux(w, i, k - 1, Axis::y);
        for (std::size_t m = 0; m < 5; ++m) out[m](i, k) = -(fe[m] - fw[m]) / grid_.dx() - (gn[m] - gs[m]) / grid_.dy();
      }
    }
    return out;
  }

 private:
  double limited(double dm, double dp) const
  {
    const double r = std::abs(dm) / (std::abs(dp) + eps_);
    const double beta = r / std::sqrt(l_ * l_ + r * r);
    return beta * dp + (1.0 - beta) * dm;
  }

  Vec5 slope(const sedflow::StateField& w, int i, int k, Axis axis) const
  {
    const int di = axis == Axis::x ? 1 : 0;
    const int dk = axis == Axis::y ? 1 : 0;
    const double d = axis == Axis::x ? grid_.dx() : grid_.dy();
    Vec5 s{};
    for (std::size_t m = 0; m < 5; ++m) {
      const double c = w[m](i, k);
      s[m] = limited((c - w[m](i - di, k - dk)) / d, (w[m](i + di, k + dk) - c) / d);
    }
    const double cap = 2.0 * w[0](i, k) / d;
    s[0] = std::clamp(s[0], -cap, cap);
    return s;
  }

  // Flux through the face between (i, k) and its upper neighbour along `axis`.
  Vec5 face_flux(const sedflow::StateField& w, int i, int k, Axis axis) const
  {
    const int i2 = axis == Axis::x ? i + 1 : i;
    const int k2 = axis == Axis::y ? k + 1 : k;
    const double d = axis == Axis::x ? grid_.dx() : grid_.dy();
    const Vec5 sl = slope(w, i, k, axis);
    const Vec5 su = slope(w, i2, k2, axis);
    Vec5 wm{};
    Vec5 wp{};
    for (std::size_t m = 0; m < 5; ++m) {
      wm[m] = w[m](i, k) + 0.5 * d * sl[m];
      wp[m] = w[m](i2, k2) - 0.5 * d * su[m];
    }
    const std::size_t n = axis == Axis::x ? 1 : 2;
    const double um = wm[n] / wm[0];
    const double up = wp[n] / wp[0];
    const double cm = std::sqrt(g_ * wm[0]);
    const double cp = std::sqrt(g_ * wp[0]);
    const double ap = std::max({um + cm, up + cp, 0.0});
    const double am = std::min({um - cm, up - cp, 0.0});
    const Vec5 fm = flux(wm, axis, g_);
    const Vec5 fp = flux(wp, axis, g_);
    Vec5 f{};
    for (std::size_t m = 0; m < 5; ++m) f[m] = (ap * fm[m] - am * fp[m] + ap * am * (wp[m] - wm[m])) / (ap - am);
    return f;
  }

  sedflow::Grid2D grid_;
  double g_;
  double l_;
  double eps_;
};

// Mean L1 error of the raw face values of sin(2 pi x) cos(2 pi y) on an n x n periodic grid,
// starting from exact cell averages.
inline double smooth_face_error(int n)
{
  const PhysParams p;
  const sedflow::AenoParams aeno;
  const sedflow::Grid2D g = sedflow::Grid2D::build({0.0, 1.0, 0.0, 1.0}, n, n);
  sedflow::StateField w(g);
  const double two_pi = 2.0 * M_PI;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double ix = (std::cos(two_pi * g.x_face(i)) - std::cos(two_pi * g.x_face(i + 1))) / (two_pi * g.dx());
      const double iy = (std::sin(two_pi * g.y_face(k + 1)) - std::sin(two_pi * g.y_face(k))) / (two_pi * g.dy());
      w.set(i, k, {2.0, 0.0, 0.0, 0.0, ix * iy});
    }
  }
  sedflow::fill_ghosts(w, g, sedflow::BoundarySpec::uniform(sedflow::BoundaryKind::periodic));
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const sedflow::InterfacePair f =
          sedflow::extrapolate(w.at(i, k), sedflow::cell_slope(w, i, k, Axis::x, g, aeno), w.at(i + 1, k),
                               sedflow::cell_slope(w, i + 1, k, Axis::x, g, aeno), g.dx(), p);
      const double exact = std::sin(two_pi * g.x_face(i + 1)) * std::cos(two_pi * g.y_center(k));
      err += std::abs(f.minus[sedflow::kZB] - exact) + std::abs(f.plus[sedflow::kZB] - exact);
    }
  }
  return err / (2.0 * n * n);
}

}  // namespace oracle
