#pragma once

#include "hyperstat/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hyperstat {

enum class Boundary {
  outflow,  ///< zero-gradient ghost cells
  periodic,
  wall,     ///< zero flux through the end faces (conservative sweeps only)
};

enum class Limiter { none, minmod };

namespace transport {

inline double minmod(double a, double b)
{
  if (a * b <= 0.0)
    return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

/// Strided 2-D view of many independent lines: element (cell c, lane l) is
/// data[c * row_stride + l]. Every lane is advanced by the same 1-D scheme.
struct LineBlock {
  double* data;
  std::size_t cells;
  std::size_t lanes;
  std::size_t row_stride;
};

/// Face speeds for a sweep: cells + 1 faces, either shared by all lanes or
/// one per (face, lane) stored face-major.
struct FaceSpeeds {
  std::span<const double> values;
  bool per_lane = false;

  double max_abs() const
  {
    double m = 0.0;
    for (double v : values)
      m = std::max(m, std::abs(v));
    return m;
  }
};

/// Explicit upwind sweeps along one axis of a line block.
///
/// Advective form (q_t + s q_x = 0) uses first-order fluctuation splitting
/// at each face with an optional minmod-limited second-order correction.
/// Conservative form (q_t + (s q)_x = 0) uses the first-order upwind flux.
/// Lanes are processed in chunks held in a ghosted scratch buffer.
class LineSweeper {
public:
  static constexpr std::size_t chunk = 64;
  static constexpr std::size_t ghosts = 2;

  void advective(LineBlock b, FaceSpeeds s, double lambda, std::size_t steps, Boundary bc, Limiter lim)
  {
    check(b, s);
    if (bc == Boundary::wall)
      throw ConfigError("advective sweep: wall boundary is only defined for conservative transport");
    for (std::size_t l0 = 0; l0 < b.lanes; l0 += chunk) {
      const std::size_t nl = std::min(chunk, b.lanes - l0);
      load(b, l0, nl);
      for (std::size_t step = 0; step < steps; ++step) {
        fill_ghosts(b.cells, nl, bc);
        if (s.per_lane)
          advective_step<true>(b.cells, nl, s, l0, b.lanes, lambda, lim);
        else
          advective_step<false>(b.cells, nl, s, l0, b.lanes, lambda, lim);
        std::swap(cur_, next_);
      }
      store(b, l0, nl);
    }
  }

  void conservative(LineBlock b, FaceSpeeds s, double lambda, std::size_t steps, Boundary bc)
  {
    check(b, s);
    for (std::size_t l0 = 0; l0 < b.lanes; l0 += chunk) {
      const std::size_t nl = std::min(chunk, b.lanes - l0);
      load(b, l0, nl);
      for (std::size_t step = 0; step < steps; ++step) {
        fill_ghosts(b.cells, nl, bc == Boundary::wall ? Boundary::outflow : bc);
        conservative_step(b.cells, nl, s, l0, b.lanes, lambda, bc);
        std::swap(cur_, next_);
      }
      store(b, l0, nl);
    }
  }

private:
  std::vector<double> cur_;
  std::vector<double> next_;
  std::vector<double> flux_;

  static void check(const LineBlock& b, const FaceSpeeds& s)
  {
    const std::size_t want = (b.cells + 1) * (s.per_lane ? b.lanes : 1);
    if (s.values.size() != want)
      throw ConfigError("LineSweeper: face speed count does not match block");
    if (b.cells < 2)
      throw ConfigError("LineSweeper: need at least 2 cells");
  }

  // Scratch layout: row r (r = 0 .. cells + 2*ghosts - 1) holds cell r - ghosts.
  double* row(std::vector<double>& v, std::size_t r) { return v.data() + r * chunk; }

  void load(const LineBlock& b, std::size_t l0, std::size_t nl)
  {
    const std::size_t rows = b.cells + 2 * ghosts;
    cur_.assign(rows * chunk, 0.0);
    next_.assign(rows * chunk, 0.0);
    flux_.assign((b.cells + 1) * chunk, 0.0);
    for (std::size_t c = 0; c < b.cells; ++c)
      std::copy_n(b.data + c * b.row_stride + l0, nl, row(cur_, c + ghosts));
  }

  void store(const LineBlock& b, std::size_t l0, std::size_t nl)
  {
    for (std::size_t c = 0; c < b.cells; ++c)
      std::copy_n(row(cur_, c + ghosts), nl, b.data + c * b.row_stride + l0);
  }

  void fill_ghosts(std::size_t cells, std::size_t nl, Boundary bc)
  {
    for (std::size_t g = 0; g < ghosts; ++g) {
      const std::size_t left = ghosts - 1 - g;       // cell -1 - g
      const std::size_t right = cells + ghosts + g;  // cell cells + g
      const double* src_l = bc == Boundary::periodic ? row(cur_, cells + ghosts - 1 - g) : row(cur_, ghosts);
      const double* src_r = bc == Boundary::periodic ? row(cur_, ghosts + g) : row(cur_, cells + ghosts - 1);
      std::copy_n(src_l, nl, row(cur_, left));
      std::copy_n(src_r, nl, row(cur_, right));
    }
  }

  template <bool PerLane>
  void advective_step(std::size_t cells, std::size_t nl, const FaceSpeeds& s, std::size_t l0, std::size_t lanes,
                      double lambda, Limiter lim)
  {
    auto speed = [&](std::size_t face, std::size_t l) {
      if constexpr (PerLane)
        return s.values[face * lanes + l0 + l];
      else
        return s.values[face];
    };

    // Limited correction fluxes at faces 0..cells. Face i separates cells
    // i-1 and i, i.e. scratch rows i+1 and i+2.
    if (lim == Limiter::minmod) {
      for (std::size_t i = 0; i <= cells; ++i) {
        const double* qm2 = row(cur_, i);
        const double* qm1 = row(cur_, i + 1);
        const double* q0 = row(cur_, i + 2);
        const double* qp1 = row(cur_, std::min(i + 3, cells + 2 * ghosts - 1));
        double* fl = row(flux_, i);
        for (std::size_t l = 0; l < nl; ++l) {
          const double si = speed(i, l);
          const double w = q0[l] - qm1[l];
          const double w_up = si > 0.0 ? qm1[l] - qm2[l] : qp1[l] - q0[l];
          const double a = std::abs(si);
          fl[l] = 0.5 * a * (1.0 - lambda * a) * minmod(w, w_up);
        }
      }
    }

    for (std::size_t j = 0; j < cells; ++j) {
      const double* qm = row(cur_, j + ghosts - 1);
      const double* q = row(cur_, j + ghosts);
      const double* qp = row(cur_, j + ghosts + 1);
      double* out = row(next_, j + ghosts);
      for (std::size_t l = 0; l < nl; ++l) {
        const double sl = speed(j, l);
        const double sr = speed(j + 1, l);
        out[l] = q[l] - lambda * (std::max(sl, 0.0) * (q[l] - qm[l]) + std::min(sr, 0.0) * (qp[l] - q[l]));
      }
      if (lim == Limiter::minmod) {
        const double* fl = row(flux_, j);
        const double* fr = row(flux_, j + 1);
        for (std::size_t l = 0; l < nl; ++l)
          out[l] -= lambda * (fr[l] - fl[l]);
      }
    }
  }

  void conservative_step(std::size_t cells, std::size_t nl, const FaceSpeeds& s, std::size_t l0, std::size_t lanes,
                         double lambda, Boundary bc)
  {
    for (std::size_t i = 0; i <= cells; ++i) {
      const double* qm = row(cur_, i + 1);
      const double* q = row(cur_, i + 2);
      double* fl = row(flux_, i);
      const bool closed = bc == Boundary::wall && (i == 0 || i == cells);
      for (std::size_t l = 0; l < nl; ++l) {
        const double si = s.per_lane ? s.values[i * lanes + l0 + l] : s.values[i];
        fl[l] = closed ? 0.0 : std::max(si, 0.0) * qm[l] + std::min(si, 0.0) * q[l];
      }
    }
    for (std::size_t j = 0; j < cells; ++j) {
      const double* q = row(cur_, j + ghosts);
      const double* fl = row(flux_, j);
      const double* fr = row(flux_, j + 1);
      double* out = row(next_, j + ghosts);
      for (std::size_t l = 0; l < nl; ++l)
        out[l] = q[l] - lambda * (fr[l] - fl[l]);
    }
  }
};

/// Number of explicit steps reaching t_final with a step no larger than dt.
inline std::size_t step_count(double t_final, double dt)
{
  if (!(dt > 0.0) || !(t_final >= 0.0))
    throw ConfigError("step_count: need dt > 0 and t_final >= 0");
  if (t_final == 0.0)
    return 0;
  return static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
}

inline void require_cfl(double dt, double max_speed, double spacing, const char* what)
{
  if (dt * max_speed > spacing * (1.0 + 1e-12))
    throw CflViolation(std::string(what) + ": CFL violated (dt * max speed > spacing)");
}

} // namespace transport
} // namespace hyperstat
