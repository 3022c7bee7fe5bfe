#pragma once

#include "hyperstat/core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace hyperstat {

/// Values over every cell of a PhaseGrid at one time level.
struct PhaseField {
  PhaseGrid grid;
  std::vector<double> values;
  double time = 0.0;

  PhaseField() = default;
  PhaseField(PhaseGrid g, double t = 0.0) : grid(std::move(g)), values(grid.size(), 0.0), time(t) {}
  PhaseField(PhaseGrid g, std::vector<double> v, double t) : grid(std::move(g)), values(std::move(v)), time(t)
  {
    if (values.size() != grid.size())
      throw ConfigError("PhaseField: value count does not match grid");
  }

  std::size_t spatial_size() const { return grid.spatial_size(); }
  std::size_t state_size() const { return grid.state_size(); }

  /// Contiguous block of state values at one flattened spatial index.
  std::span<double> slice(std::size_t spatial_index)
  {
    return {values.data() + spatial_index * state_size(), state_size()};
  }
  std::span<const double> slice(std::size_t spatial_index) const
  {
    return {values.data() + spatial_index * state_size(), state_size()};
  }

  bool all_finite() const
  {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
  }
};

/// Probability density over the state axes, per spatial point.
struct DensityField : PhaseField {
  using PhaseField::PhaseField;
  explicit DensityField(PhaseField f) : PhaseField(std::move(f)) {}
};

/// Cumulative distribution along a single state axis, per spatial point.
struct CdfField : PhaseField {
  using PhaseField::PhaseField;
  explicit CdfField(PhaseField f) : PhaseField(std::move(f))
  {
    if (grid.state().size() != 1)
      throw ConfigError("CdfField: exactly one state axis required");
  }
};

/// Joint density of N solution components at N spatial points: spatial axes
/// (x_1..x_N) paired with state axes (U_1..U_N).
struct MultiPointDensity : PhaseField {
  using PhaseField::PhaseField;
  explicit MultiPointDensity(PhaseField f) : PhaseField(std::move(f))
  {
    if (grid.spatial().size() != grid.state().size())
      throw ConfigError("MultiPointDensity: spatial and state axes must pair up");
  }
  std::size_t points() const { return grid.spatial().size(); }
};

/// One realization (or a moment profile) on a spatial axis.
struct SpatialField {
  Axis axis;
  std::vector<double> values;
  double time = 0.0;

  SpatialField() = default;
  SpatialField(Axis a, double t = 0.0) : axis(a), values(a.size(), 0.0), time(t) {}
  SpatialField(Axis a, std::vector<double> v, double t) : axis(a), values(std::move(v)), time(t)
  {
    if (values.size() != axis.size())
      throw ConfigError("SpatialField: value count does not match axis");
  }

  template <class F>
  static SpatialField sample(const Axis& a, F&& fn, double t = 0.0)
  {
    SpatialField s(a, t);
    for (std::size_t j = 0; j < a.size(); ++j)
      s.values[j] = fn(a.center(j));
    return s;
  }
};

/// Build a single-state-axis field on (x, U) from a pointwise function.
template <class Field, class F>
Field tabulate(const Axis& x, const Axis& u, F&& fn, double t = 0.0)
{
  Field f(PhaseGrid({x}, {u}), t);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = x.center(j);
    for (std::size_t k = 0; k < u.size(); ++k)
      f.values[j * u.size() + k] = fn(xj, u.center(k));
  }
  return f;
}

} // namespace hyperstat
