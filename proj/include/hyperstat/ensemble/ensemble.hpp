#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/ensemble/flux.hpp"
#include "hyperstat/ensemble/param_law.hpp"
#include "hyperstat/scenarios/scenario.hpp"
#include "hyperstat/transport/advection.hpp"
#include "hyperstat/transport/godunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <span>
#include <vector>

namespace hyperstat {

/// N realizations of the PDE solution on one spatial axis. Values are stored
/// cell-major (all samples of cell 0, then cell 1, ...), which is the layout
/// both the batched solvers and the per-point estimators want.
class Ensemble {
public:
  Ensemble() = default;

  Ensemble(Axis axis, std::vector<std::vector<double>> samples, std::uint64_t seed, double time)
    : axis_(axis), samples_(std::move(samples)), values_(axis.size() * samples_.size(), 0.0), seed_(seed),
      time_(time)
  {
    if (samples_.empty())
      throw ConfigError("Ensemble: need at least one sample");
  }

  const Axis& axis() const { return axis_; }
  std::size_t size() const { return samples_.size(); }
  std::uint64_t seed() const { return seed_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  const std::vector<std::vector<double>>& samples() const { return samples_; }

  double& at(std::size_t cell, std::size_t sample) { return values_[cell * size() + sample]; }
  double at(std::size_t cell, std::size_t sample) const { return values_[cell * size() + sample]; }

  /// All sample values at one spatial cell.
  std::span<const double> column(std::size_t cell) const { return {values_.data() + cell * size(), size()}; }

  SpatialField field(std::size_t sample) const
  {
    SpatialField f(axis_, time_);
    for (std::size_t j = 0; j < axis_.size(); ++j)
      f.values[j] = at(j, sample);
    return f;
  }

  void set_field(std::size_t sample, const SpatialField& f)
  {
    if (!(f.axis == axis_))
      throw ConfigError("Ensemble: field axis mismatch");
    for (std::size_t j = 0; j < axis_.size(); ++j)
      at(j, sample) = f.values[j];
  }

  transport::LineBlock block() { return {values_.data(), axis_.size(), size(), size()}; }

  bool all_finite() const
  {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
  }

  const std::vector<double>& raw() const { return values_; }

private:
  Axis axis_;
  std::vector<std::vector<double>> samples_;
  std::vector<double> values_;
  std::uint64_t seed_ = 0;
  double time_ = 0.0;
};

/// Draw N parameters from the scenario law and tabulate the initial data.
inline Ensemble sample_ensemble(const Scenario& sc, const Axis& axis, std::size_t n, std::uint64_t seed)
{
  if (n == 0)
    throw ConfigError("sample_ensemble: need N >= 1");
  if (!sc.initial_data)
    throw ConfigError("sample_ensemble: scenario has no parametrized initial data");
  if (parameter_dimension(sc.law) != sc.parameter_dim)
    throw ConfigError("sample_ensemble: parameter law dimension does not match scenario '" + sc.name + "'");
  std::vector<std::vector<double>> omegas(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto eng = sample_engine(seed, i);
    omegas[i] = draw_parameter(sc.law, eng);
  }
  Ensemble e(axis, std::move(omegas), seed, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = e.samples()[i];
    for (std::size_t j = 0; j < axis.size(); ++j)
      e.at(j, i) = sc.initial_data(w, axis.center(j));
  }
  return e;
}

namespace detail {

inline std::vector<double> face_speeds(const Axis& axis, const std::function<double(double)>& s)
{
  std::vector<double> v(axis.size() + 1);
  for (std::size_t i = 0; i <= axis.size(); ++i)
    v[i] = s(axis.face(i));
  return v;
}

inline void advance_linear(transport::LineBlock b, const Axis& axis, const std::function<double(double)>& s,
                           double t_final, double dt, Boundary bc, Limiter lim)
{
  const auto speeds = face_speeds(axis, s);
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps == 0)
    return;
  const double h = t_final / static_cast<double>(steps);
  transport::FaceSpeeds fs{speeds, false};
  transport::require_cfl(h, fs.max_abs(), axis.spacing(), "linear realization solver");
  transport::LineSweeper sweeper;
  sweeper.advective(b, fs, h / axis.spacing(), steps, bc, lim);
}

template <class Flux>
void advance_conservation(transport::LineBlock b, const Axis& axis, const Flux& a, double t_final, double dt,
                          Boundary bc)
{
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps == 0)
    return;
  const double h = t_final / static_cast<double>(steps);
  double lo = b.data[0];
  double hi = b.data[0];
  for (std::size_t c = 0; c < b.cells; ++c)
    for (std::size_t l = 0; l < b.lanes; ++l) {
      lo = std::min(lo, b.data[c * b.row_stride + l]);
      hi = std::max(hi, b.data[c * b.row_stride + l]);
    }
  // a' is monotone, so the extreme wave speeds sit at the extreme states.
  const double max_speed = std::max(std::abs(a.derivative(lo)), std::abs(a.derivative(hi)));
  transport::require_cfl(h, max_speed, axis.spacing(), "conservation-law realization solver");
  transport::GodunovSweeper<Flux> sweeper(a);
  sweeper.advance(b, h / axis.spacing(), steps, bc);
}

inline void check_finite(std::span<const double> v, const char* what)
{
  for (double x : v)
    if (!std::isfinite(x))
      throw NumericalError(std::string(what) + ": non-finite value");
}

} // namespace detail

/// Advance one realization of u_t + s(x) u_x = 0 by upwinding at each face
/// according to the sign of s there.
inline SpatialField solve_realization_linear(const SpatialField& u0, const std::function<double(double)>& s,
                                             double t_final, double dt, Boundary bc = Boundary::outflow,
                                             Limiter lim = Limiter::none)
{
  SpatialField u = u0;
  detail::advance_linear({u.values.data(), u.axis.size(), 1, 1}, u.axis, s, t_final, dt, bc, lim);
  detail::check_finite(u.values, "solve_realization_linear");
  u.time = u0.time + t_final;
  return u;
}

/// Advance one realization of u_t + a(u)_x = 0 with the first-order Godunov
/// scheme (exact Riemann solutions for convex a).
inline SpatialField solve_realization_conservation(const SpatialField& u0, const FluxSpec& flux, double t_final,
                                                   double dt, Boundary bc = Boundary::outflow)
{
  SpatialField u = u0;
  transport::LineBlock b{u.values.data(), u.axis.size(), 1, 1};
  std::visit(
      [&](const auto& a) {
        using F = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<F, LinearSpeed>)
          throw ConfigError("solve_realization_conservation: flux must be convex, not a linear speed");
        else
          detail::advance_conservation(b, u.axis, a, t_final, dt, bc);
      },
      flux);
  detail::check_finite(u.values, "solve_realization_conservation");
  u.time = u0.time + t_final;
  return u;
}

/// Advance every realization independently; sample order is preserved.
inline Ensemble evolve_ensemble(const Ensemble& e, const Scenario& sc, double t_final, double dt,
                                Limiter lim = Limiter::none)
{
  Ensemble out = e;
  std::visit(
      [&](const auto& a) {
        using F = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<F, LinearSpeed>)
          detail::advance_linear(out.block(), out.axis(), a.s, t_final, dt, sc.boundary, lim);
        else
          detail::advance_conservation(out.block(), out.axis(), a, t_final, dt, sc.boundary);
      },
      sc.flux);
  if (!out.all_finite())
    throw NumericalError("evolve_ensemble: non-finite value");
  out.set_time(e.time() + t_final);
  return out;
}

} // namespace hyperstat
