#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/core/interpolate.hpp"
#include "hyperstat/transport/advection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace hyperstat {

using FarField = std::function<double(double x, double u)>;

/// Foot point x0 of the characteristic dx/dt = s(x) that reaches x at time
/// t, by classical RK4 run backward in time.
inline double characteristic_foot(const std::function<double(double)>& s, double x, double t, double max_step = 1e-3)
{
  if (t <= 0.0)
    return x;
  const auto n = static_cast<std::size_t>(std::ceil(t / max_step));
  const double h = t / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k1 = -s(x);
    const double k2 = -s(x + 0.5 * h * k1);
    const double k3 = -s(x + 0.5 * h * k2);
    const double k4 = -s(x + h * k3);
    x += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  }
  return x;
}

namespace detail {

/// Value of the gridded F0 at (x, U-node k), falling back on the far field
/// outside the spatial domain.
inline double foot_value(const CdfField& F0, double x, std::size_t k, const FarField& far, const char* what)
{
  const Axis& ax = F0.grid.spatial(0);
  const Axis& au = F0.grid.state(0);
  if (!ax.contains(x)) {
    if (!far)
      throw ConfigError(std::string(what) + ": foot point outside the domain and no far field given");
    return far(x, au.center(k));
  }
  const auto b = bracket(ax, x, OutOfRange::clamp);
  return (1.0 - b.w) * F0.values[b.lo * au.size() + k] + b.w * F0.values[b.hi * au.size() + k];
}

} // namespace detail

/// F(t, x, U) = F0(x - a'(U) t, U), interpolating the gridded F0 linearly in
/// x at each U node.
inline CdfField evolve_cdf_exact(const CdfField& F0, const std::function<double(double)>& aprime, double t,
                                 const FarField& far = {})
{
  const Axis& ax = F0.grid.spatial(0);
  const Axis& au = F0.grid.state(0);
  CdfField F(F0.grid, F0.time + t);
  for (std::size_t k = 0; k < au.size(); ++k) {
    const double shift = aprime(au.center(k)) * t;
    for (std::size_t j = 0; j < ax.size(); ++j)
      F.values[j * au.size() + k] = detail::foot_value(F0, ax.center(j) - shift, k, far, "evolve_cdf_exact");
  }
  return F;
}

/// Closed-form variant: F0 is evaluated exactly at each foot point.
inline CdfField evolve_cdf_exact(const FarField& F0, const std::function<double(double)>& aprime, const Axis& x,
                                 const Axis& u, double t)
{
  return tabulate<CdfField>(x, u, [&](double xx, double uu) { return F0(xx - aprime(uu) * t, uu); }, t);
}

/// Linear-speed counterpart: F(t, x, U) = F0(q_t^{-1}(x), U) with the foot
/// found by integrating the characteristic ODE.
inline CdfField evolve_cdf_characteristics(const CdfField& F0, const std::function<double(double)>& s, double t,
                                           const FarField& far = {})
{
  const Axis& ax = F0.grid.spatial(0);
  const Axis& au = F0.grid.state(0);
  CdfField F(F0.grid, F0.time + t);
  for (std::size_t j = 0; j < ax.size(); ++j) {
    const double x0 = characteristic_foot(s, ax.center(j), t);
    for (std::size_t k = 0; k < au.size(); ++k)
      F.values[j * au.size() + k] = detail::foot_value(F0, x0, k, far, "evolve_cdf_characteristics");
  }
  return F;
}

/// Finite-volume transport F_t + a'(U) F_x = 0: each U slice moves at its
/// own constant speed.
inline CdfField evolve_cdf_fv(const CdfField& F0, const std::function<double(double)>& aprime, double t_final,
                              double dt, Boundary bc = Boundary::outflow, Limiter lim = Limiter::minmod)
{
  const Axis& ax = F0.grid.spatial(0);
  const Axis& au = F0.grid.state(0);
  const std::size_t lanes = au.size();
  CdfField F = F0;
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps > 0) {
    std::vector<double> speeds((ax.size() + 1) * lanes);
    for (std::size_t k = 0; k < lanes; ++k) {
      const double a = aprime(au.center(k));
      for (std::size_t i = 0; i <= ax.size(); ++i)
        speeds[i * lanes + k] = a;
    }
    const double h = t_final / static_cast<double>(steps);
    transport::FaceSpeeds fs{speeds, true};
    transport::require_cfl(h, fs.max_abs(), ax.spacing(), "evolve_cdf_fv");
    transport::LineSweeper sweeper;
    sweeper.advective({F.values.data(), ax.size(), lanes, lanes}, fs, h / ax.spacing(), steps, bc, lim);
  }
  if (!F.all_finite())
    throw NumericalError("evolve_cdf_fv: non-finite value");
  F.time = F0.time + t_final;
  return F;
}

/// Largest decrease of F along U over all spatial points (0 when monotone).
inline double monotonicity_defect(const CdfField& F)
{
  double worst = 0.0;
  for (std::size_t j = 0; j < F.spatial_size(); ++j) {
    const auto s = F.slice(j);
    for (std::size_t k = 1; k < s.size(); ++k)
      worst = std::max(worst, s[k - 1] - s[k]);
  }
  return worst;
}

} // namespace hyperstat
