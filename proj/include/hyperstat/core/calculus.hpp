#pragma once

#include "hyperstat/core/fields.hpp"

#include <algorithm>
#include <numeric>

namespace hyperstat {

/// Midpoint-rule integral over all state axes at one flattened spatial index.
inline double state_integral(const PhaseField& f, std::size_t spatial_index)
{
  if (spatial_index >= f.spatial_size())
    throw ConfigError("state_integral: spatial index out of range");
  const auto s = f.slice(spatial_index);
  return std::accumulate(s.begin(), s.end(), 0.0) * f.grid.state_cell_volume();
}

/// Largest |1 - integral| over all spatial points.
inline double max_normalization_drift(const PhaseField& f)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < f.spatial_size(); ++i)
    worst = std::max(worst, std::abs(1.0 - state_integral(f, i)));
  return worst;
}

/// dF/dU by central differences (one-sided at the ends). Negative values,
/// which a nondecreasing F produces only through rounding, are clipped.
inline DensityField cdf_to_pdf(const CdfField& F, bool clip = true)
{
  DensityField f(F.grid, F.time);
  const std::size_t nu = F.grid.state(0).size();
  const double du = F.grid.state(0).spacing();
  for (std::size_t j = 0; j < F.spatial_size(); ++j) {
    const auto in = F.slice(j);
    auto out = f.slice(j);
    out[0] = (in[1] - in[0]) / du;
    out[nu - 1] = (in[nu - 1] - in[nu - 2]) / du;
    for (std::size_t k = 1; k + 1 < nu; ++k)
      out[k] = (in[k + 1] - in[k - 1]) / (2.0 * du);
    if (clip)
      for (auto& v : out)
        v = std::max(v, 0.0);
  }
  return f;
}

/// Cumulative midpoint sum: F_k = dU * (sum_{i<k} f_i + f_k / 2), made
/// nondecreasing and clamped to [0, 1].
inline CdfField pdf_to_cdf(const DensityField& f)
{
  if (f.grid.state().size() != 1)
    throw ConfigError("pdf_to_cdf: exactly one state axis required");
  CdfField F(f.grid, f.time);
  const double du = f.grid.state(0).spacing();
  for (std::size_t j = 0; j < f.spatial_size(); ++j) {
    const auto in = f.slice(j);
    auto out = F.slice(j);
    double below = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < in.size(); ++k) {
      const double v = std::clamp(du * (below + 0.5 * in[k]), 0.0, 1.0);
      prev = std::max(prev, v);
      out[k] = prev;
      below += in[k];
    }
  }
  return F;
}

} // namespace hyperstat
