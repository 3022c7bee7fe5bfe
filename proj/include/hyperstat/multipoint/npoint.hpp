#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/transport/advection.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace hyperstat {

using Speed = std::function<double(double)>;

enum class Splitting { godunov, strang };

struct SplitOptions {
  Splitting splitting = Splitting::godunov;
  Boundary boundary = Boundary::outflow;
  Limiter limiter = Limiter::none;
  /// Upper bound on grid cells accepted by the N-point solvers.
  std::size_t cell_budget = 100'000'000;
  /// Sweep the spatial axes in reverse order.
  bool reverse = false;
};

/// Diagonal source terms of the two-point system: u_t + c1 u_x = g1(x, u),
/// v_t + c2 v_x = g2(y, v).
struct SourceSpec {
  std::function<double(double x, double u)> g1;
  std::function<double(double y, double v)> g2;
  /// +1: f_t + ... + d_U(g1 f) + d_V(g2 f) = 0 (continuity form).
  /// -1: the opposite sign on both source terms.
  double sign = 1.0;
};

namespace detail {

/// Number of cells strictly before and after axis i in the flattened layout.
inline std::pair<std::size_t, std::size_t> outer_inner(const PhaseGrid& g, std::size_t i)
{
  std::size_t outer = 1;
  for (std::size_t k = 0; k < i; ++k)
    outer *= g.axis(k).size();
  return {outer, g.stride(i)};
}

/// Advective sweeps along spatial axis i with speed c(x_i).
inline void sweep_spatial(PhaseField& f, std::size_t i, const Speed& c, double h, std::size_t steps,
                          const SplitOptions& opt, transport::LineSweeper& sweeper)
{
  const Axis& a = f.grid.spatial(i);
  std::vector<double> speeds(a.size() + 1);
  for (std::size_t k = 0; k <= a.size(); ++k)
    speeds[k] = c(a.face(k));
  transport::FaceSpeeds fs{speeds, false};
  const auto [outer, inner] = outer_inner(f.grid, i);
  for (std::size_t o = 0; o < outer; ++o)
    sweeper.advective({f.values.data() + o * a.size() * inner, a.size(), inner, inner}, fs, h / a.spacing(), steps,
                      opt.boundary, opt.limiter);
}

/// Conservative sweep along state axis (n + p) where p pairs it with spatial
/// axis p; speed g(x_p, U) depends on the spatial coordinate of the block.
inline void sweep_state(PhaseField& f, std::size_t p, const std::function<double(double, double)>& g, double sign,
                        double h, transport::LineSweeper& sweeper)
{
  const std::size_t n = f.grid.spatial().size();
  const std::size_t axis = n + p;
  const Axis& u = f.grid.state(p);
  const Axis& xp = f.grid.spatial(p);
  const auto [outer, inner] = outer_inner(f.grid, axis);
  const std::size_t xp_stride_outer = [&] {
    std::size_t s = 1;
    for (std::size_t k = p + 1; k < axis; ++k)
      s *= f.grid.axis(k).size();
    return s;
  }();
  std::vector<double> speeds(u.size() + 1);
  double last_x = 0.0;
  bool have = false;
  for (std::size_t o = 0; o < outer; ++o) {
    const double x = xp.center((o / xp_stride_outer) % xp.size());
    if (!have || x != last_x) {
      for (std::size_t k = 0; k <= u.size(); ++k)
        speeds[k] = sign * g(x, u.face(k));
      last_x = x;
      have = true;
    }
    transport::FaceSpeeds fs{speeds, false};
    sweeper.conservative({f.values.data() + o * u.size() * inner, u.size(), inner, inner}, fs, h / u.spacing(), 1,
                         Boundary::wall);
  }
}

inline double max_source_speed(const PhaseGrid& g, std::size_t p, const std::function<double(double, double)>& s)
{
  double m = 0.0;
  const Axis& x = g.spatial(p);
  const Axis& u = g.state(p);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k <= u.size(); ++k)
      m = std::max(m, std::abs(s(x.center(j), u.face(k))));
  return m;
}

inline MultiPointDensity split_evolve(const MultiPointDensity& f0, const std::vector<Speed>& speeds,
                                      const SourceSpec* src, double t_final, double dt, const SplitOptions& opt)
{
  const std::size_t n = f0.points();
  if (speeds.size() != n)
    throw ConfigError("N-point evolution: need one speed per spatial axis");
  if (f0.grid.size() > opt.cell_budget)
    throw ConfigError("N-point evolution: grid exceeds the cell budget");
  MultiPointDensity f = f0;
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps == 0)
    return f;
  const double h = t_final / static_cast<double>(steps);
  for (std::size_t i = 0; i < n; ++i) {
    const Axis& a = f.grid.spatial(i);
    double m = 0.0;
    for (std::size_t k = 0; k <= a.size(); ++k)
      m = std::max(m, std::abs(speeds[i](a.face(k))));
    transport::require_cfl(h, m, a.spacing(), "N-point evolution");
  }
  if (src) {
    transport::require_cfl(h, max_source_speed(f.grid, 0, src->g1), f.grid.state(0).spacing(), "sourced evolution");
    transport::require_cfl(h, max_source_speed(f.grid, 1, src->g2), f.grid.state(1).spacing(), "sourced evolution");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = opt.reverse ? n - 1 - i : i;

  transport::LineSweeper sweeper;
  if (opt.splitting == Splitting::godunov || n == 1) {
    // Sweeps with one step each so the stages interleave in time.
    for (std::size_t s = 0; s < steps; ++s) {
      for (std::size_t i : order)
        sweep_spatial(f, i, speeds[i], h, 1, opt, sweeper);
      if (src) {
        sweep_state(f, 0, src->g1, src->sign, h, sweeper);
        sweep_state(f, 1, src->g2, src->sign, h, sweeper);
      }
    }
  } else {
    if (src)
      throw ConfigError("sourced evolution supports Godunov splitting only");
    for (std::size_t s = 0; s < steps; ++s) {
      for (std::size_t q = 0; q + 1 < n; ++q)
        sweep_spatial(f, order[q], speeds[order[q]], 0.5 * h, 1, opt, sweeper);
      sweep_spatial(f, order[n - 1], speeds[order[n - 1]], h, 1, opt, sweeper);
      for (std::size_t q = n - 1; q-- > 0;)
        sweep_spatial(f, order[q], speeds[order[q]], 0.5 * h, 1, opt, sweeper);
    }
  }
  if (!f.all_finite())
    throw NumericalError("N-point evolution: non-finite value");
  f.time = f0.time + t_final;
  return f;
}

} // namespace detail

/// f_t + sum_i c_i(x_i) d_{x_i} f = 0 by dimension splitting.
inline MultiPointDensity evolve_n_point(const MultiPointDensity& f0, const std::vector<Speed>& speeds, double t_final,
                                        double dt, const SplitOptions& opt = {})
{
  if (f0.points() < 1 || f0.points() > 3)
    throw ConfigError("evolve_n_point: supports 1 to 3 points");
  return detail::split_evolve(f0, speeds, nullptr, t_final, dt, opt);
}

inline MultiPointDensity evolve_two_point(const MultiPointDensity& f0, const Speed& c1, const Speed& c2,
                                          double t_final, double dt, const SplitOptions& opt = {})
{
  if (f0.points() != 2)
    throw ConfigError("evolve_two_point: need a two-point grid");
  return evolve_n_point(f0, {c1, c2}, t_final, dt, opt);
}

/// Two-point evolution with diagonal sources, transported conservatively in
/// U and V (zero flux through the state-range ends).
inline MultiPointDensity evolve_two_point_sourced(const MultiPointDensity& f0, const Speed& c1, const Speed& c2,
                                                  const SourceSpec& src, double t_final, double dt,
                                                  const SplitOptions& opt = {})
{
  if (f0.points() != 2)
    throw ConfigError("evolve_two_point_sourced: need a two-point grid");
  if (!src.g1 || !src.g2)
    throw ConfigError("evolve_two_point_sourced: both source terms required");
  return detail::split_evolve(f0, {c1, c2}, &src, t_final, dt, opt);
}

/// Keep the listed points (spatial axis i with state axis i). Dropped state
/// axes are integrated out; dropped spatial axes are averaged, since the
/// marginal does not depend on them.
inline MultiPointDensity marginalize(const MultiPointDensity& f, const std::vector<std::size_t>& keep)
{
  const std::size_t n = f.points();
  if (keep.empty())
    throw ConfigError("marginalize: keep at least one point");
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n || kept[k])
      throw ConfigError("marginalize: invalid or repeated point index");
    kept[k] = true;
  }
  std::vector<Axis> sp, st;
  for (std::size_t k : keep) {
    sp.push_back(f.grid.spatial(k));
    st.push_back(f.grid.state(k));
  }
  MultiPointDensity out(PhaseGrid(sp, st), f.time);
  double weight = 1.0;
  for (std::size_t k = 0; k < n; ++k)
    if (!kept[k])
      weight *= f.grid.state(k).spacing() / static_cast<double>(f.grid.spatial(k).size());

  const std::size_t rank = f.grid.rank();
  // Output stride of every input axis (0 when dropped).
  std::vector<std::size_t> ostride(rank, 0);
  std::vector<std::size_t> src_axis;
  for (std::size_t k : keep)
    src_axis.push_back(k);
  for (std::size_t k : keep)
    src_axis.push_back(n + k);
  for (std::size_t q = 0; q < src_axis.size(); ++q)
    ostride[src_axis[q]] = out.grid.stride(q);

  std::vector<std::size_t> idx(rank, 0);
  std::size_t o = 0;
  for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
    out.values[o] += f.values[flat] * weight;
    for (std::size_t a = rank; a-- > 0;) {
      ++idx[a];
      o += ostride[a];
      if (idx[a] < f.grid.axis(a).size())
        break;
      o -= ostride[a] * idx[a];
      idx[a] = 0;
    }
  }
  return out;
}

/// One-point (x, U) density from a single-point MultiPointDensity.
inline DensityField as_density(const MultiPointDensity& f)
{
  if (f.points() != 1)
    throw ConfigError("as_density: need a one-point field");
  return DensityField(PhaseField(f.grid, f.values, f.time));
}

} // namespace hyperstat
