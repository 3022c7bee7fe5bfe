#pragma once

#include "hyperstat/core/errors.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace hyperstat {

/// Uniform partition of [lo, hi] into n cells. Values live at cell centers
/// lo + (k + 1/2) * spacing; faces sit at lo + k * spacing.
class Axis {
public:
  Axis() = default;

  Axis(double lo, double hi, std::size_t n) : lo_(lo), hi_(hi), n_(n)
  {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
      throw ConfigError("Axis: need finite lo < hi");
    if (n < 2)
      throw ConfigError("Axis: need at least 2 cells");
    spacing_ = (hi - lo) / static_cast<double>(n);
  }

  /// Axis starting at lo with the requested spacing; hi is stretched to a
  /// whole number of cells.
  static Axis with_spacing(double lo, double hi, double spacing)
  {
    if (!(spacing > 0.0))
      throw ConfigError("Axis: spacing must be positive");
    const double cells = (hi - lo) / spacing;
    auto n = static_cast<std::size_t>(std::ceil(cells - 1e-9));
    if (n < 2)
      n = 2;
    return Axis(lo, lo + static_cast<double>(n) * spacing, n);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return n_; }
  double spacing() const { return spacing_; }
  double length() const { return hi_ - lo_; }

  double center(std::size_t k) const { return lo_ + (static_cast<double>(k) + 0.5) * spacing_; }
  double face(std::size_t k) const { return lo_ + static_cast<double>(k) * spacing_; }

  bool contains(double x) const { return x >= lo_ && x <= hi_; }

  friend bool operator==(const Axis& a, const Axis& b)
  {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.n_ == b.n_;
  }

private:
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::size_t n_ = 2;
  double spacing_ = 0.5;
};

} // namespace hyperstat
