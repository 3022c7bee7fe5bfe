#pragma once

#include "hyperstat/core/axis.hpp"
#include "hyperstat/scenarios/scenario.hpp"

#include <functional>
#include <string>

namespace hyperstat {

using CdfFunction = std::function<double(double x, double u)>;

/// Left-continuous generalized inverse inf{U : F(U) >= p} on [lo, hi],
/// located by bisection. p <= F(lo) gives lo; p > F(hi) gives hi.
inline double generalized_inverse(const std::function<double(double)>& F, double p, double lo, double hi)
{
  if (F(lo) >= p)
    return lo;
  if (F(hi) < p)
    return hi;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (F(mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Canonical random data with Omega = [0, 1] and uniform law whose
/// pointwise statistics are F0: u0(x; w) = F0(x, .)^{-1}(w).
///
/// F0 is checked for monotonicity in U on the (x, U) grid first.
inline Scenario quantile_initial_data(CdfFunction F0, const Axis& x, const Axis& u,
                                      FluxSpec flux = LinearSpeed{[](double) { return 0.0; }})
{
  if (!F0)
    throw ConfigError("quantile_initial_data: empty CDF");
  for (std::size_t j = 0; j < x.size(); ++j) {
    double prev = F0(x.center(j), u.face(0));
    for (std::size_t k = 1; k <= u.size(); ++k) {
      const double v = F0(x.center(j), u.face(k));
      if (v < prev - 1e-12)
        throw ConfigError("quantile_initial_data: F0 is not nondecreasing in U");
      prev = v;
    }
  }
  Scenario sc;
  sc.name = "quantile";
  sc.flux = std::move(flux);
  sc.law = Uniform01{};
  sc.parameter_dim = 1;
  const double lo = u.lo();
  const double hi = u.hi();
  sc.initial_data = [F0, lo, hi](std::span<const double> w, double xx) {
    return generalized_inverse([&](double uu) { return F0(xx, uu); }, w[0], lo, hi);
  };
  sc.initial_cdf = F0;
  sc.domain = {x.lo(), x.hi()};
  sc.state_range = {lo, hi};
  return sc;
}

} // namespace hyperstat
