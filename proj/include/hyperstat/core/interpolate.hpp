#pragma once

#include "hyperstat/core/fields.hpp"

#include <algorithm>
#include <cmath>

namespace hyperstat {

enum class OutOfRange { error, clamp };

namespace detail {

/// Bracketing centers and weight for a query along an axis. Queries between
/// a face and the outermost center take the end value.
struct Bracket {
  std::size_t lo;
  std::size_t hi;
  double w; // weight of hi
};

inline Bracket bracket(const Axis& a, double q, OutOfRange mode)
{
  if (!a.contains(q)) {
    if (mode == OutOfRange::error || !std::isfinite(q))
      throw NumericalError("linear_interpolate: query outside axis range");
    q = std::clamp(q, a.lo(), a.hi());
  }
  const double s = (q - a.lo()) / a.spacing() - 0.5;
  const std::size_t last = a.size() - 1;
  if (s <= 0.0)
    return {0, 0, 0.0};
  if (s >= static_cast<double>(last))
    return {last, last, 0.0};
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-9) {
    const auto k = static_cast<std::size_t>(nearest);
    return {k, k, 0.0};
  }
  const auto k = static_cast<std::size_t>(s);
  const std::size_t k1 = std::min(k + 1, last);
  return {k, k1, s - static_cast<double>(k)};
}

} // namespace detail

/// Piecewise-linear interpolation through cell-center values.
inline double linear_interpolate(const SpatialField& f, double x, OutOfRange mode = OutOfRange::error)
{
  const auto b = detail::bracket(f.axis, x, mode);
  return (1.0 - b.w) * f.values[b.lo] + b.w * f.values[b.hi];
}

/// Bilinear interpolation of a one-spatial, one-state field at (x, U).
inline double linear_interpolate(const PhaseField& f, double x, double u, OutOfRange mode = OutOfRange::error)
{
  if (f.grid.spatial().size() != 1 || f.grid.state().size() != 1)
    throw ConfigError("linear_interpolate: expects a field on (x, U)");
  const auto bx = detail::bracket(f.grid.spatial(0), x, mode);
  const auto bu = detail::bracket(f.grid.state(0), u, mode);
  const std::size_t nu = f.grid.state(0).size();
  auto at = [&](std::size_t j, std::size_t k) { return f.values[j * nu + k]; };
  const double lo = (1.0 - bu.w) * at(bx.lo, bu.lo) + bu.w * at(bx.lo, bu.hi);
  const double hi = (1.0 - bu.w) * at(bx.hi, bu.lo) + bu.w * at(bx.hi, bu.hi);
  return (1.0 - bx.w) * lo + bx.w * hi;
}

} // namespace hyperstat
