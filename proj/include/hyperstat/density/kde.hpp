#pragma once

#include "hyperstat/core/axis.hpp"
#include "hyperstat/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace hyperstat {

enum class KernelShape { gaussian, epanechnikov };

struct KernelSpec {
  KernelShape shape = KernelShape::gaussian;
  double bandwidth = 0.02;
};

inline std::string kernel_name(KernelShape s) { return s == KernelShape::gaussian ? "gaussian" : "epanechnikov"; }

inline KernelShape parse_kernel(const std::string& s)
{
  if (s == "gaussian")
    return KernelShape::gaussian;
  if (s == "epanechnikov")
    return KernelShape::epanechnikov;
  throw ConfigError("unknown kernel '" + s + "'");
}

namespace kernels {

/// Gaussian contributions beyond this many bandwidths are dropped
/// (relative size below 1.3e-14).
inline constexpr double gaussian_cutoff = 8.0;

inline double gaussian(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
inline double gaussian_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double epanechnikov(double z) { return std::abs(z) < 1.0 ? 0.75 * (1.0 - z * z) : 0.0; }
inline double epanechnikov_cdf(double z)
{
  if (z <= -1.0)
    return 0.0;
  if (z >= 1.0)
    return 1.0;
  return 0.25 * (2.0 + 3.0 * z - z * z * z);
}

inline double support(KernelShape s) { return s == KernelShape::gaussian ? gaussian_cutoff : 1.0; }

} // namespace kernels

namespace detail {

/// Indices of axis centers within [lo, hi], as a half-open range.
inline std::pair<std::size_t, std::size_t> center_range(const Axis& a, double lo, double hi)
{
  const double n = static_cast<double>(a.size());
  const double first = std::ceil((lo - a.lo()) / a.spacing() - 0.5);
  const double last = std::floor((hi - a.lo()) / a.spacing() - 0.5);
  const double b = std::clamp(first, 0.0, n);
  const double e = std::clamp(last + 1.0, 0.0, n);
  return {static_cast<std::size_t>(b), static_cast<std::size_t>(std::max(b, e))};
}

inline void check_kde_input(std::span<const double> samples, double h, const char* what)
{
  if (samples.empty())
    throw ConfigError(std::string(what) + ": empty sample list");
  if (!(h > 0.0))
    throw ConfigError(std::string(what) + ": bandwidth must be positive");
  for (double y : samples)
    if (!std::isfinite(y))
      throw NumericalError(std::string(what) + ": non-finite sample");
}

/// Adds K((y_k - y)/h) for every center y_k within the kernel support.
/// Gaussian values on the uniform grid follow the recurrence
/// g_{k+1} = g_k r_k, r_{k+1} = r_k c, so only two exponentials per sample.
inline void scatter_kernel(double y, KernelShape shape, double h, const Axis& a, double* out)
{
  const double reach = kernels::support(shape) * h;
  const auto [b, e] = center_range(a, y - reach, y + reach);
  if (b >= e)
    return;
  if (shape == KernelShape::epanechnikov) {
    for (std::size_t k = b; k < e; ++k)
      out[k] += kernels::epanechnikov((a.center(k) - y) / h);
    return;
  }
  const double d = a.spacing() / h;
  double z = (a.center(b) - y) / h;
  double g = std::exp(-0.5 * z * z);
  double r = std::exp(-z * d - 0.5 * d * d);
  const double c = std::exp(-d * d);
  for (std::size_t k = b; k < e; ++k) {
    out[k] += g;
    g *= r;
    r *= c;
  }
}

} // namespace detail

/// p(y) = (N h)^{-1} sum_j K((y - y_j) / h) at the centers of `axis`.
inline std::vector<double> kde(std::span<const double> samples, const KernelSpec& k, const Axis& axis)
{
  detail::check_kde_input(samples, k.bandwidth, "kde");
  std::vector<double> out(axis.size(), 0.0);
  for (double y : samples)
    detail::scatter_kernel(y, k.shape, k.bandwidth, axis, out.data());
  const double norm = k.shape == KernelShape::gaussian ? 1.0 / std::sqrt(2.0 * std::numbers::pi) : 1.0;
  const double scale = norm / (static_cast<double>(samples.size()) * k.bandwidth);
  for (auto& v : out)
    v *= scale;
  return out;
}

/// F(y) = N^{-1} sum_j Kc((y - y_j) / h) with Kc the kernel's CDF.
inline std::vector<double> kernel_cdf(std::span<const double> samples, const KernelSpec& k, const Axis& axis)
{
  detail::check_kde_input(samples, k.bandwidth, "kernel_cdf");
  const double h = k.bandwidth;
  const double reach = kernels::support(k.shape) * h;
  std::vector<double> out(axis.size(), 0.0);
  // full[k] counts samples whose whole kernel mass lies below center k.
  std::vector<double> full(axis.size() + 1, 0.0);
  for (double y : samples) {
    const auto [b, e] = detail::center_range(axis, y - reach, y + reach);
    for (std::size_t i = b; i < e; ++i) {
      const double z = (axis.center(i) - y) / h;
      out[i] += k.shape == KernelShape::gaussian ? kernels::gaussian_cdf(z) : kernels::epanechnikov_cdf(z);
    }
    const std::size_t above = detail::center_range(axis, y + reach, axis.hi() + axis.spacing()).first;
    const std::size_t start = std::max(e, above);
    full[start] += 1.0;
  }
  double running = 0.0;
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (std::size_t i = 0; i < axis.size(); ++i) {
    running += full[i];
    out[i] = std::min((out[i] + running) * inv, 1.0);
  }
  return out;
}

/// Empirical CDF at the centers of `axis`. Samples within 1e-9 cell widths
/// of a center count as ties there, with weight 1/2.
inline std::vector<double> empirical_cdf(std::span<const double> samples, const Axis& axis)
{
  if (samples.empty())
    throw ConfigError("empirical_cdf: empty sample list");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out(axis.size());
  const double inv = 1.0 / static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const double y = axis.center(i);
    const double tol = 1e-9 * axis.spacing();
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), y - tol);
    const auto hi = std::upper_bound(lo, sorted.end(), y + tol);
    const double below = static_cast<double>(lo - sorted.begin());
    const double ties = static_cast<double>(hi - lo);
    out[i] = (below + 0.5 * ties) * inv;
  }
  return out;
}

/// Product-kernel estimate of a 2-D density on the (u, v) center grid,
/// stored u-major.
inline std::vector<double> kde2d(std::span<const double> us, std::span<const double> vs, const KernelSpec& k,
                                 const Axis& u, const Axis& v)
{
  detail::check_kde_input(us, k.bandwidth, "kde2d");
  if (us.size() != vs.size())
    throw ConfigError("kde2d: sample coordinate lists differ in length");
  std::vector<double> out(u.size() * v.size(), 0.0);
  std::vector<double> gu(u.size());
  std::vector<double> gv(v.size());
  const double reach = kernels::support(k.shape) * k.bandwidth;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto [bu, eu] = detail::center_range(u, us[i] - reach, us[i] + reach);
    const auto [bv, ev] = detail::center_range(v, vs[i] - reach, vs[i] + reach);
    if (bu >= eu || bv >= ev)
      continue;
    std::fill(gu.begin() + bu, gu.begin() + eu, 0.0);
    std::fill(gv.begin() + bv, gv.begin() + ev, 0.0);
    detail::scatter_kernel(us[i], k.shape, k.bandwidth, u, gu.data());
    detail::scatter_kernel(vs[i], k.shape, k.bandwidth, v, gv.data());
    for (std::size_t a = bu; a < eu; ++a) {
      double* row = out.data() + a * v.size();
      for (std::size_t b = bv; b < ev; ++b)
        row[b] += gu[a] * gv[b];
    }
  }
  const double norm = k.shape == KernelShape::gaussian ? 1.0 / (2.0 * std::numbers::pi) : 1.0;
  const double scale = norm / (static_cast<double>(us.size()) * k.bandwidth * k.bandwidth);
  for (auto& x : out)
    x *= scale;
  return out;
}

} // namespace hyperstat
