#pragma once

#include "hyperstat/core/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace hyperstat {

/// Density over a plane of two state coordinates, z1-major.
struct PlanarDensity {
  Axis z1;
  Axis z2;
  std::vector<double> values;

  double mass() const
  {
    double s = 0.0;
    for (double v : values)
      s += v;
    return s * z1.spacing() * z2.spacing();
  }
};

namespace detail {

/// Bilinear interpolation over the cell centers of (u, v); zero outside the
/// covered rectangle, constant in the outer half cells.
inline double planar_value(std::span<const double> s, const Axis& u, const Axis& v, double uu, double vv)
{
  if (!u.contains(uu) || !v.contains(vv))
    return 0.0;
  auto locate = [](const Axis& a, double q, std::size_t& i, double& w) {
    double pos = (q - a.lo()) / a.spacing() - 0.5;
    pos = std::clamp(pos, 0.0, static_cast<double>(a.size() - 1));
    i = std::min(static_cast<std::size_t>(pos), a.size() - 2);
    w = pos - static_cast<double>(i);
  };
  std::size_t i, j;
  double wu, wv;
  locate(u, uu, i, wu);
  locate(v, vv, j, wv);
  const std::size_t nv = v.size();
  return (1.0 - wu) * ((1.0 - wv) * s[i * nv + j] + wv * s[i * nv + j + 1]) +
         wu * ((1.0 - wv) * s[(i + 1) * nv + j] + wv * s[(i + 1) * nv + j + 1]);
}

} // namespace detail

/// Density of z = P^{-1} (u, v)^T at the diagonal point (x_j, x_j):
/// f_z(z) = |det P| f(x_j, x_j, P z). P is row-major.
inline PlanarDensity one_point_from_diagonal(const MultiPointDensity& f, std::size_t j,
                                             const std::array<double, 4>& P, const Axis& z1, const Axis& z2)
{
  if (f.points() != 2)
    throw ConfigError("one_point_from_diagonal: need a two-point field");
  if (!(f.grid.spatial(0) == f.grid.spatial(1)))
    throw ConfigError("one_point_from_diagonal: x and y axes must coincide to take the diagonal");
  if (j >= f.grid.spatial(0).size())
    throw ConfigError("one_point_from_diagonal: spatial index out of range");
  const double det = P[0] * P[3] - P[1] * P[2];
  const double scale = std::max({std::abs(P[0]), std::abs(P[1]), std::abs(P[2]), std::abs(P[3])});
  if (!(std::abs(det) > 1e-14 * scale * scale))
    throw ConfigError("one_point_from_diagonal: P is singular");
  const auto slice = f.slice(j * f.grid.spatial(1).size() + j);
  const Axis& u = f.grid.state(0);
  const Axis& v = f.grid.state(1);
  PlanarDensity out{z1, z2, std::vector<double>(z1.size() * z2.size())};
  for (std::size_t a = 0; a < z1.size(); ++a)
    for (std::size_t b = 0; b < z2.size(); ++b) {
      const double p = z1.center(a);
      const double q = z2.center(b);
      out.values[a * z2.size() + b] =
          std::abs(det) * detail::planar_value(slice, u, v, P[0] * p + P[1] * q, P[2] * p + P[3] * q);
    }
  return out;
}

} // namespace hyperstat
