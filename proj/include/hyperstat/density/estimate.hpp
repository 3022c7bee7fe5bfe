#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/density/bandwidth.hpp"
#include "hyperstat/density/kde.hpp"
#include "hyperstat/ensemble/ensemble.hpp"

#include <vector>

namespace hyperstat {

enum class BandwidthMode {
  fixed,            ///< KernelSpec::bandwidth everywhere
  normal_reference, ///< chosen per spatial point from that point's samples
};

struct EstimatorSpec {
  KernelSpec kernel;
  BandwidthMode mode = BandwidthMode::fixed;
};

namespace detail {

inline double point_bandwidth(std::span<const double> col, const EstimatorSpec& spec)
{
  return spec.mode == BandwidthMode::fixed ? spec.kernel.bandwidth
                                           : normal_reference_bandwidth(col, spec.kernel.shape);
}

/// Kernel mass of every cell divided by dU. Used when the bandwidth is below
/// the cell width, where point values of the estimate would be meaningless.
inline std::vector<double> cell_average_kde(std::span<const double> col, const KernelSpec& k, const Axis& u)
{
  const Axis faces(u.lo() - 0.5 * u.spacing(), u.hi() + 0.5 * u.spacing(), u.size() + 1);
  const auto c = kernel_cdf(col, k, faces);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = (c[i + 1] - c[i]) / u.spacing();
  return out;
}

/// Cell masses / dU of the samples: the zero-bandwidth density.
inline std::vector<double> histogram_density(std::span<const double> col, const Axis& u)
{
  std::vector<double> out(u.size(), 0.0);
  const double w = 1.0 / (static_cast<double>(col.size()) * u.spacing());
  for (double y : col) {
    if (!u.contains(y))
      continue;
    const auto k = std::min(static_cast<std::size_t>((y - u.lo()) / u.spacing()), u.size() - 1);
    out[k] += w;
  }
  return out;
}

} // namespace detail

/// Per-x kernel density estimate of an ensemble on the (x, U) grid. Bandwidths
/// below the cell width switch to cell averages of the estimate.
inline DensityField ensemble_kde(const Ensemble& e, const Axis& u, const EstimatorSpec& spec)
{
  DensityField f(PhaseGrid({e.axis()}, {u}), e.time());
  for (std::size_t j = 0; j < e.axis().size(); ++j) {
    const auto col = e.column(j);
    const double h = detail::point_bandwidth(col, spec);
    std::vector<double> p;
    if (h >= u.spacing())
      p = kde(col, {spec.kernel.shape, h}, u);
    else if (h > 0.0)
      p = detail::cell_average_kde(col, {spec.kernel.shape, h}, u);
    else
      p = detail::histogram_density(col, u);
    std::copy(p.begin(), p.end(), f.slice(j).begin());
  }
  return f;
}

/// Per-x kernel CDF estimate; a zero bandwidth falls back on the empirical CDF.
inline CdfField ensemble_kernel_cdf(const Ensemble& e, const Axis& u, const EstimatorSpec& spec)
{
  CdfField F(PhaseGrid({e.axis()}, {u}), e.time());
  for (std::size_t j = 0; j < e.axis().size(); ++j) {
    const auto col = e.column(j);
    const double h = detail::point_bandwidth(col, spec);
    const auto c = h > 0.0 ? kernel_cdf(col, {spec.kernel.shape, h}, u) : empirical_cdf(col, u);
    std::copy(c.begin(), c.end(), F.slice(j).begin());
  }
  return F;
}

} // namespace hyperstat
