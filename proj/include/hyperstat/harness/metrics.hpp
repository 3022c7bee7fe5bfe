#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/ensemble/ensemble.hpp"

#include <algorithm>
#include <cmath>

namespace hyperstat {

/// Sum of |A - B| times the cell volume over the whole grid.
inline double l1_distance(const PhaseField& a, const PhaseField& b)
{
  if (!(a.grid == b.grid))
    throw ConfigError("l1_distance: grids differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::abs(a.values[i] - b.values[i]);
  return s * a.grid.cell_volume();
}

inline double l1_distance(const SpatialField& a, const SpatialField& b)
{
  if (!(a.axis == b.axis))
    throw ConfigError("l1_distance: axes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::abs(a.values[i] - b.values[i]);
  return s * a.axis.spacing();
}

/// L1 distance over an (x, U) field, skipping `margin` cells at both ends of
/// both axes.
inline double l1_window(const PhaseField& a, const PhaseField& b, std::size_t margin)
{
  if (!(a.grid == b.grid))
    throw ConfigError("l1_window: grids differ");
  if (a.grid.spatial().size() != 1 || a.grid.state().size() != 1)
    throw ConfigError("l1_window: need grid (x; U)");
  const std::size_t nx = a.grid.spatial(0).size();
  const std::size_t nu = a.grid.state(0).size();
  if (2 * margin >= nx || 2 * margin >= nu)
    throw ConfigError("l1_window: margin leaves an empty window");
  double s = 0.0;
  for (std::size_t j = margin; j < nx - margin; ++j)
    for (std::size_t k = margin; k < nu - margin; ++k)
      s += std::abs(a.values[j * nu + k] - b.values[j * nu + k]);
  return s * a.grid.cell_volume();
}

inline double l1_window(const SpatialField& a, const SpatialField& b, std::size_t margin)
{
  if (!(a.axis == b.axis))
    throw ConfigError("l1_window: axes differ");
  const std::size_t n = a.axis.size();
  if (2 * margin >= n)
    throw ConfigError("l1_window: margin leaves an empty window");
  double s = 0.0;
  for (std::size_t j = margin; j < n - margin; ++j)
    s += std::abs(a.values[j] - b.values[j]);
  return s * a.axis.spacing();
}

/// Largest over x of sup_U |F_A - F_B| within the window.
inline double kolmogorov_window(const PhaseField& a, const PhaseField& b, std::size_t margin)
{
  if (!(a.grid == b.grid))
    throw ConfigError("kolmogorov_window: grids differ");
  const std::size_t nx = a.grid.spatial(0).size();
  const std::size_t nu = a.grid.state(0).size();
  double d = 0.0;
  for (std::size_t j = margin; j + margin < nx; ++j)
    for (std::size_t k = 0; k < nu; ++k)
      d = std::max(d, std::abs(a.values[j * nu + k] - b.values[j * nu + k]));
  return d;
}

struct Moments {
  SpatialField mean;
  SpatialField variance;
};

/// Per-x mean and variance by midpoint quadrature, normalized by the slice
/// mass so that small normalization drift does not bias the mean.
inline Moments moments(const DensityField& f)
{
  if (f.grid.spatial().size() != 1 || f.grid.state().size() != 1)
    throw ConfigError("moments: need grid (x; U)");
  const Axis& x = f.grid.spatial(0);
  const Axis& u = f.grid.state(0);
  Moments m{SpatialField(x, f.time), SpatialField(x, f.time)};
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto s = f.slice(j);
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      m0 += s[k];
      m1 += s[k] * u.center(k);
    }
    const double mean = m0 > 0.0 ? m1 / m0 : 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
      m2 += s[k] * (u.center(k) - mean) * (u.center(k) - mean);
    m.mean.values[j] = mean;
    m.variance.values[j] = m0 > 0.0 ? m2 / m0 : 0.0;
  }
  return m;
}

/// Moments of a CDF through E[U] = U_L + int (1 - F) and
/// E[(U - U_L)^2] = int 2 (U - U_L)(1 - F), the integrals by midpoint rule.
inline Moments moments(const CdfField& F)
{
  if (F.grid.spatial().size() != 1)
    throw ConfigError("moments: need grid (x; U)");
  const Axis& x = F.grid.spatial(0);
  const Axis& u = F.grid.state(0);
  Moments m{SpatialField(x, F.time), SpatialField(x, F.time)};
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto s = F.slice(j);
    double a = 0.0, b = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double tail = 1.0 - s[k];
      const double r = u.center(k) - u.lo();
      a += tail;
      b += 2.0 * r * tail;
    }
    a *= u.spacing();
    b *= u.spacing();
    m.mean.values[j] = u.lo() + a;
    m.variance.values[j] = std::max(b - a * a, 0.0);
  }
  return m;
}

/// Sample mean and unbiased sample variance per x.
inline Moments moments(const Ensemble& e)
{
  const Axis& x = e.axis();
  Moments m{SpatialField(x, e.time()), SpatialField(x, e.time())};
  const double n = static_cast<double>(e.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto col = e.column(j);
    double mean = 0.0;
    for (double v : col)
      mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : col)
      ss += (v - mean) * (v - mean);
    m.mean.values[j] = mean;
    m.variance.values[j] = e.size() > 1 ? ss / (n - 1.0) : 0.0;
  }
  return m;
}

} // namespace hyperstat
