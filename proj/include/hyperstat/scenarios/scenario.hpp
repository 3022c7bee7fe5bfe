#pragma once

#include "hyperstat/core/axis.hpp"
#include "hyperstat/ensemble/flux.hpp"
#include "hyperstat/ensemble/param_law.hpp"
#include "hyperstat/transport/advection.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hyperstat {

struct Interval {
  double lo;
  double hi;
};

/// A random initial-value problem: the PDE, the parameter law, the map from
/// parameter to initial profile, and whatever closed-form initial statistics
/// are known.
struct Scenario {
  std::string name;
  FluxSpec flux;
  ParamLaw law;
  std::size_t parameter_dim = 1;
  std::function<double(std::span<const double> omega, double x)> initial_data;
  std::function<double(double x, double u)> initial_cdf; ///< empty when unknown
  std::function<double(double x, double u)> initial_pdf; ///< empty when unknown
  Interval domain{0.0, 1.0};
  Interval state_range{0.0, 1.0};
  /// State value (an atom of the initial law) that state axes put on a cell
  /// center, so that gridded CDFs and histograms see it unsplit.
  std::optional<double> state_anchor;
  Boundary boundary = Boundary::outflow;
  /// Latest time for which the statistics equations are valid (no shocks).
  std::optional<double> validity;
  /// Named constants echoed by `scenario dump`.
  std::vector<std::pair<std::string, std::string>> constants;

  Axis spatial_axis(double dx) const { return Axis::with_spacing(domain.lo, domain.hi, dx); }
  Axis state_axis(double du) const
  {
    double lo = state_range.lo;
    if (state_anchor && du > 0.0) {
      const double m = std::ceil((*state_anchor - lo) / du - 0.5 - 1e-9);
      lo = *state_anchor - (m + 0.5) * du;
    }
    return Axis::with_spacing(lo, state_range.hi, du);
  }

  bool valid_at(double t) const { return !validity || t < *validity; }
};

} // namespace hyperstat
