#pragma once

#include "hyperstat/transport/advection.hpp"

#include <algorithm>
#include <vector>

namespace hyperstat::transport {

/// Godunov flux for a convex flux function with minimum at `sonic`:
/// F(uL, uR) = max(a(max(uL, u*)), a(min(uR, u*))).
template <class Flux>
double godunov_flux(const Flux& a, double ul, double ur)
{
  const double us = a.sonic_point();
  return std::max(a(std::max(ul, us)), a(std::min(ur, us)));
}

/// First-order Godunov sweeps of u_t + a(u)_x = 0 over a line block.
template <class Flux>
class GodunovSweeper {
public:
  static constexpr std::size_t chunk = 64;

  explicit GodunovSweeper(Flux a) : a_(std::move(a)) {}

  void advance(LineBlock b, double lambda, std::size_t steps, Boundary bc)
  {
    if (bc == Boundary::wall)
      throw ConfigError("GodunovSweeper: wall boundary not supported");
    const std::size_t rows = b.cells + 2;
    for (std::size_t l0 = 0; l0 < b.lanes; l0 += chunk) {
      const std::size_t nl = std::min(chunk, b.lanes - l0);
      cur_.assign(rows * chunk, 0.0);
      next_.assign(rows * chunk, 0.0);
      flux_.assign((b.cells + 1) * chunk, 0.0);
      for (std::size_t c = 0; c < b.cells; ++c)
        std::copy_n(b.data + c * b.row_stride + l0, nl, row(cur_, c + 1));
      for (std::size_t step = 0; step < steps; ++step) {
        const bool per = bc == Boundary::periodic;
        std::copy_n(row(cur_, per ? b.cells : 1), nl, row(cur_, 0));
        std::copy_n(row(cur_, per ? 1 : b.cells), nl, row(cur_, b.cells + 1));
        for (std::size_t i = 0; i <= b.cells; ++i) {
          const double* ql = row(cur_, i);
          const double* qr = row(cur_, i + 1);
          double* fl = row(flux_, i);
          for (std::size_t l = 0; l < nl; ++l)
            fl[l] = godunov_flux(a_, ql[l], qr[l]);
        }
        for (std::size_t j = 0; j < b.cells; ++j) {
          const double* q = row(cur_, j + 1);
          const double* fl = row(flux_, j);
          const double* fr = row(flux_, j + 1);
          double* out = row(next_, j + 1);
          for (std::size_t l = 0; l < nl; ++l)
            out[l] = q[l] - lambda * (fr[l] - fl[l]);
        }
        std::swap(cur_, next_);
      }
      for (std::size_t c = 0; c < b.cells; ++c)
        std::copy_n(row(cur_, c + 1), nl, b.data + c * b.row_stride + l0);
    }
  }

private:
  Flux a_;
  std::vector<double> cur_;
  std::vector<double> next_;
  std::vector<double> flux_;

  double* row(std::vector<double>& v, std::size_t r) { return v.data() + r * chunk; }
};

} // namespace hyperstat::transport
