#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/transport/advection.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace hyperstat {

/// Advect every state slice of a one-spatial-axis field by
/// q_t + s(x) q_x = 0. The field layout (state fastest) is a line block with
/// one lane per state cell.
template <class Field>
Field advect_slices(const Field& f0, const std::function<double(double)>& s, double t_final, double dt,
                    Boundary bc = Boundary::outflow, Limiter lim = Limiter::minmod)
{
  if (f0.grid.spatial().size() != 1)
    throw ConfigError("advect_slices: exactly one spatial axis required");
  const Axis& x = f0.grid.spatial(0);
  Field f = f0;
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps > 0) {
    std::vector<double> speeds(x.size() + 1);
    for (std::size_t i = 0; i <= x.size(); ++i)
      speeds[i] = s(x.face(i));
    const double h = t_final / static_cast<double>(steps);
    transport::FaceSpeeds fs{speeds, false};
    transport::require_cfl(h, fs.max_abs(), x.spacing(), "advect_slices");
    transport::LineSweeper sweeper;
    sweeper.advective({f.values.data(), x.size(), f.state_size(), f.state_size()}, fs, h / x.spacing(), steps, bc,
                      lim);
  }
  if (!f.all_finite())
    throw NumericalError("advect_slices: non-finite value");
  f.time = f0.time + t_final;
  return f;
}

/// Pointwise PDF of u_t + s(x) u_x = 0: f_t + s(x) f_x = 0 slice by slice.
inline DensityField evolve_pdf_linear(const DensityField& f0, const std::function<double(double)>& s, double t_final,
                                      double dt, Boundary bc = Boundary::outflow, Limiter lim = Limiter::minmod)
{
  return advect_slices(f0, s, t_final, dt, bc, lim);
}

/// The same transport applied to the CDF.
inline CdfField evolve_cdf_linear(const CdfField& F0, const std::function<double(double)>& s, double t_final,
                                  double dt, Boundary bc = Boundary::outflow, Limiter lim = Limiter::minmod)
{
  return advect_slices(F0, s, t_final, dt, bc, lim);
}

/// Joint PDF of (u, C) when the speed C is itself random and constant in x:
/// f_t + (sign * C) f_x = 0 on each (U, C) slice. The state axes are (U, C);
/// sign = -1 corresponds to u_t = C u_x.
inline DensityField evolve_pdf_random_speed(const DensityField& f0, double t_final, double dt, double sign = -1.0,
                                            Boundary bc = Boundary::outflow, Limiter lim = Limiter::minmod)
{
  if (f0.grid.spatial().size() != 1 || f0.grid.state().size() != 2)
    throw ConfigError("evolve_pdf_random_speed: need grid (x; U, C)");
  const Axis& x = f0.grid.spatial(0);
  const Axis& c = f0.grid.state(1);
  const std::size_t lanes = f0.state_size();
  DensityField f = f0;
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps > 0) {
    std::vector<double> speeds((x.size() + 1) * lanes);
    for (std::size_t i = 0; i <= x.size(); ++i)
      for (std::size_t l = 0; l < lanes; ++l)
        speeds[i * lanes + l] = sign * c.center(l % c.size());
    const double h = t_final / static_cast<double>(steps);
    transport::FaceSpeeds fs{speeds, true};
    transport::require_cfl(h, fs.max_abs(), x.spacing(), "evolve_pdf_random_speed");
    transport::LineSweeper sweeper;
    sweeper.advective({f.values.data(), x.size(), lanes, lanes}, fs, h / x.spacing(), steps, bc, lim);
  }
  if (!f.all_finite())
    throw NumericalError("evolve_pdf_random_speed: non-finite value");
  f.time = f0.time + t_final;
  return f;
}

/// Integrate out the speed axis of an (x; U, C) density.
inline DensityField marginalize_speed(const DensityField& f)
{
  if (f.grid.state().size() != 2)
    throw ConfigError("marginalize_speed: need grid (x; U, C)");
  const Axis& u = f.grid.state(0);
  const Axis& c = f.grid.state(1);
  DensityField out(PhaseGrid(f.grid.spatial(), {u}), f.time);
  for (std::size_t j = 0; j < f.spatial_size(); ++j) {
    const auto in = f.slice(j);
    for (std::size_t k = 0; k < u.size(); ++k) {
      double sum = 0.0;
      for (std::size_t m = 0; m < c.size(); ++m)
        sum += in[k * c.size() + m];
      out.values[j * u.size() + k] = sum * c.spacing();
    }
  }
  return out;
}

} // namespace hyperstat
