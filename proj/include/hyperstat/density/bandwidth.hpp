#pragma once

#include "hyperstat/density/kde.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace hyperstat {

/// h = alpha * N^{-1 / (2 beta + 1)}.
inline double bandwidth_rule(std::size_t n, int beta, double alpha)
{
  if (n < 1)
    throw ConfigError("bandwidth_rule: need N >= 1");
  if (beta < 1)
    throw ConfigError("bandwidth_rule: beta must be an integer >= 1");
  if (!(alpha > 0.0))
    throw ConfigError("bandwidth_rule: alpha must be positive");
  return alpha * std::pow(static_cast<double>(n), -1.0 / (2.0 * beta + 1.0));
}

namespace detail {

inline double sorted_quantile(const std::vector<double>& s, double p)
{
  const double pos = p * static_cast<double>(s.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= s.size())
    return s.back();
  const double w = pos - static_cast<double>(i);
  return (1.0 - w) * s[i] + w * s[i + 1];
}

} // namespace detail

/// Normal-reference bandwidth c_K * sigma * N^{-1/5} with the robust scale
/// min(sd, IQR / 1.349) (sd alone when the IQR vanishes). Returns 0 for
/// samples with no spread.
inline double normal_reference_bandwidth(std::span<const double> samples, KernelShape shape)
{
  if (samples.empty())
    throw ConfigError("normal_reference_bandwidth: empty sample list");
  const double n = static_cast<double>(samples.size());
  if (samples.size() < 2)
    return 0.0;
  double mean = 0.0;
  for (double y : samples)
    mean += y;
  mean /= n;
  double ss = 0.0;
  for (double y : samples)
    ss += (y - mean) * (y - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double iqr = detail::sorted_quantile(s, 0.75) - detail::sorted_quantile(s, 0.25);
  const double sigma = iqr > 0.0 ? std::min(sd, iqr / 1.349) : sd;
  const double c = shape == KernelShape::gaussian ? 1.06 : 2.34;
  return c * sigma * std::pow(n, -0.2);
}

struct RateFit {
  std::vector<double> sample_counts;
  std::vector<double> errors;
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (log N, log error).
inline RateFit rate_fit(std::vector<double> counts, std::vector<double> errors)
{
  if (counts.size() != errors.size() || counts.size() < 3)
    throw ConfigError("rate_fit: need at least 3 (N, error) pairs");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!(errors[i] > 0.0))
      throw ConfigError("rate_fit: errors must be positive");
    if (!(counts[i] > 0.0) || (i > 0 && !(counts[i] > counts[i - 1])))
      throw ConfigError("rate_fit: sample counts must be positive and strictly increasing");
  }
  const double m = static_cast<double>(counts.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double x = std::log(counts[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateFit fit;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.sample_counts = std::move(counts);
  fit.errors = std::move(errors);
  return fit;
}

/// sup_y |F_N(y) - F(y)| for the empirical CDF of the samples.
inline double kolmogorov_distance(std::span<const double> samples, const std::function<double(double)>& F)
{
  if (samples.empty())
    throw ConfigError("kolmogorov_distance: empty sample list");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // Just below the run of ties the empirical CDF is i / n; at it, j / n.
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i])
      ++j;
    const double f = F(s[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j + 1) / n;
    // F is right-continuous; its left limit at an atom is probed just below.
    const double f_left = F(std::nextafter(s[i], -INFINITY));
    d = std::max({d, std::abs(at - f), std::abs(below - f_left)});
    i = j;
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double kolmogorov_distance(std::span<const double> a, std::span<const double> b)
{
  if (a.empty() || b.empty())
    throw ConfigError("kolmogorov_distance: empty sample list");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j >= y.size() || (i < x.size() && x[i] <= y[j]))
      v = x[i];
    else
      v = y[j];
    while (i < x.size() && x[i] <= v)
      ++i;
    while (j < y.size() && y[j] <= v)
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

} // namespace hyperstat
