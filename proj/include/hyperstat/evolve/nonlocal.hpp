#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/ensemble/flux.hpp"
#include "hyperstat/transport/advection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace hyperstat {

/// Local speeds a+/- of the central-upwind flux. `spectral` bounds the
/// eigenvalues of the (lower-triangular) nonlocal flux Jacobian by the range
/// of a' over the U faces; `per_state` uses a'(U_k) for row k.
enum class WaveSpeeds { spectral, per_state };

/// Quantity limited in x at the cell faces: the density itself, or its running
/// U-integral (then differenced back), which keeps every reconstructed column
/// at the cell's own mass.
enum class Reconstruction { density, cumulative };

struct NonlocalOptions {
  double theta = 1.5;
  WaveSpeeds speeds = WaveSpeeds::spectral;
  Reconstruction reconstruction = Reconstruction::cumulative;
  Boundary boundary = Boundary::outflow;
  /// Fraction of dx that dt * max speed may cover.
  double cfl = 0.5;
};

namespace detail {

inline double minmod3(double a, double b, double c)
{
  if (a > 0.0 && b > 0.0 && c > 0.0)
    return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0)
    return std::max({a, b, c});
  return 0.0;
}

} // namespace detail

/// Nonlocal flux F(f)_k = [a'(U_{k+1/2}) C_{k+1/2} - a'(U_{k-1/2}) C_{k-1/2}] / dU
/// where C is the running midpoint-rule integral of f from U_L.
inline void nonlocal_flux(const double* f, std::size_t nu, const std::vector<double>& aprime_faces, double du,
                          double* out)
{
  double below = 0.0;
  double flux_below = 0.0;
  for (std::size_t k = 0; k < nu; ++k) {
    const double above = below + du * f[k];
    const double flux_above = aprime_faces[k + 1] * above;
    out[k] = (flux_above - flux_below) / du;
    below = above;
    flux_below = flux_above;
  }
}

/// Central-upwind evolution of f_t + d/dx [ d/dU ( a'(U) int_{U_L}^U f ) ] = 0
/// with minmod(theta) reconstruction in x and forward Euler in time.
inline DensityField evolve_pdf_nonlocal(const DensityField& f0, const FluxSpec& flux, double t_final, double dt,
                                        const NonlocalOptions& opt = {})
{
  if (is_linear(flux))
    throw ConfigError("evolve_pdf_nonlocal: convex flux required");
  if (!(opt.theta >= 1.0 && opt.theta <= 2.0))
    throw ConfigError("evolve_pdf_nonlocal: theta must lie in [1, 2]");
  if (f0.grid.spatial().size() != 1 || f0.grid.state().size() != 1)
    throw ConfigError("evolve_pdf_nonlocal: need grid (x; U)");
  if (opt.boundary == Boundary::wall)
    throw ConfigError("evolve_pdf_nonlocal: wall boundary not supported");
  const Axis& ax = f0.grid.spatial(0);
  const Axis& au = f0.grid.state(0);
  const std::size_t nx = ax.size();
  const std::size_t nu = au.size();
  const double dx = ax.spacing();
  const double du = au.spacing();
  const auto da = flux_derivative(flux);

  std::vector<double> aprime_faces(nu + 1);
  for (std::size_t k = 0; k <= nu; ++k)
    aprime_faces[k] = da(au.face(k));
  std::vector<double> ap(nu);
  std::vector<double> am(nu);
  if (opt.speeds == WaveSpeeds::spectral) {
    const auto [lo, hi] = std::minmax_element(aprime_faces.begin(), aprime_faces.end());
    std::fill(ap.begin(), ap.end(), std::max(*hi, 0.0));
    std::fill(am.begin(), am.end(), std::min(*lo, 0.0));
  } else {
    for (std::size_t k = 0; k < nu; ++k) {
      const double a = da(au.center(k));
      ap[k] = std::max(a, 0.0);
      am[k] = std::min(a, 0.0);
    }
  }
  double max_speed = 0.0;
  for (std::size_t k = 0; k < nu; ++k)
    max_speed = std::max({max_speed, ap[k], -am[k]});

  DensityField f = f0;
  const std::size_t steps = transport::step_count(t_final, dt);
  if (steps == 0)
    return f;
  const double h = t_final / static_cast<double>(steps);
  transport::require_cfl(h, max_speed, opt.cfl * dx, "evolve_pdf_nonlocal");

  // Extended rows: row r holds cell r - 2.
  const std::size_t rows = nx + 4;
  std::vector<double> ext(rows * nu);
  std::vector<double> slope(rows * nu, 0.0);
  std::vector<double> fm(nu), fp(nu), Fm(nu), Fp(nu);
  std::vector<double> H((nx + 1) * nu);
  const bool periodic = opt.boundary == Boundary::periodic;
  const bool cumulative = opt.reconstruction == Reconstruction::cumulative;
  auto cell_row = [&](long c) -> const double* {
    const long n = static_cast<long>(nx);
    long src = c;
    if (c < 0)
      src = periodic ? c + n : 0;
    else if (c >= n)
      src = periodic ? c - n : n - 1;
    return f.values.data() + static_cast<std::size_t>(src) * nu;
  };

  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t r = 0; r < rows; ++r) {
      const double* src = cell_row(static_cast<long>(r) - 2);
      double* dst = ext.data() + r * nu;
      if (cumulative) {
        double run = 0.0;
        for (std::size_t k = 0; k < nu; ++k)
          dst[k] = run += du * src[k];
      } else {
        std::copy_n(src, nu, dst);
      }
    }
    for (std::size_t r = 1; r + 1 < rows; ++r) {
      const double* qm = ext.data() + (r - 1) * nu;
      const double* q = ext.data() + r * nu;
      const double* qp = ext.data() + (r + 1) * nu;
      double* sl = slope.data() + r * nu;
      for (std::size_t k = 0; k < nu; ++k)
        sl[k] = detail::minmod3(opt.theta * (q[k] - qm[k]), 0.5 * (qp[k] - qm[k]), opt.theta * (qp[k] - q[k]));
    }
    // Face i separates cells i-1 and i (rows i+1 and i+2).
    for (std::size_t i = 0; i <= nx; ++i) {
      const double* ql = ext.data() + (i + 1) * nu;
      const double* qr = ext.data() + (i + 2) * nu;
      const double* sl = slope.data() + (i + 1) * nu;
      const double* sr = slope.data() + (i + 2) * nu;
      for (std::size_t k = 0; k < nu; ++k) {
        fm[k] = ql[k] + 0.5 * sl[k];
        fp[k] = qr[k] - 0.5 * sr[k];
      }
      if (cumulative) {
        for (std::size_t k = nu; k-- > 1;) {
          fm[k] = (fm[k] - fm[k - 1]) / du;
          fp[k] = (fp[k] - fp[k - 1]) / du;
        }
        fm[0] /= du;
        fp[0] /= du;
      }
      nonlocal_flux(fm.data(), nu, aprime_faces, du, Fm.data());
      nonlocal_flux(fp.data(), nu, aprime_faces, du, Fp.data());
      double* Hi = H.data() + i * nu;
      for (std::size_t k = 0; k < nu; ++k) {
        const double gap = ap[k] - am[k];
        if (gap > 0.0)
          Hi[k] = (ap[k] * Fm[k] - am[k] * Fp[k]) / gap + ap[k] * am[k] / gap * (fp[k] - fm[k]);
        else
          Hi[k] = 0.5 * (Fm[k] + Fp[k]);
      }
    }
    const double lambda = h / dx;
    for (std::size_t j = 0; j < nx; ++j) {
      double* q = f.values.data() + j * nu;
      const double* Hl = H.data() + j * nu;
      const double* Hr = H.data() + (j + 1) * nu;
      for (std::size_t k = 0; k < nu; ++k)
        q[k] -= lambda * (Hr[k] - Hl[k]);
    }
  }
  if (!f.all_finite())
    throw NumericalError("evolve_pdf_nonlocal: non-finite value");
  f.time = f0.time + t_final;
  return f;
}

} // namespace hyperstat
