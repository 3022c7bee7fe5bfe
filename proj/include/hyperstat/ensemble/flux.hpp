#pragma once

#include <functional>
#include <string>
#include <variant>

namespace hyperstat {

/// Signed speed of the advective equation u_t + s(x) u_x = 0.
struct LinearSpeed {
  std::function<double(double)> s;
};

/// Burgers flux a(u) = u^2 / 2.
struct BurgersFlux {
  double operator()(double u) const { return 0.5 * u * u; }
  double derivative(double u) const { return u; }
  double second_derivative(double) const { return 1.0; }
  double sonic_point() const { return 0.0; }
};

/// General strictly convex flux. `sonic` is the minimizer of a.
struct ConvexFlux {
  std::function<double(double)> a;
  std::function<double(double)> da;
  std::function<double(double)> d2a;
  double sonic = 0.0;

  double operator()(double u) const { return a(u); }
  double derivative(double u) const { return da(u); }
  double second_derivative(double u) const { return d2a(u); }
  double sonic_point() const { return sonic; }
};

using FluxSpec = std::variant<LinearSpeed, BurgersFlux, ConvexFlux>;

inline bool is_linear(const FluxSpec& f) { return std::holds_alternative<LinearSpeed>(f); }

/// a'(u) for the nonlinear alternatives.
inline std::function<double(double)> flux_derivative(const FluxSpec& f)
{
  if (std::holds_alternative<BurgersFlux>(f))
    return [](double u) { return u; };
  if (const auto* c = std::get_if<ConvexFlux>(&f))
    return c->da;
  return {};
}

inline std::function<double(double)> flux_second_derivative(const FluxSpec& f)
{
  if (std::holds_alternative<BurgersFlux>(f))
    return [](double) { return 1.0; };
  if (const auto* c = std::get_if<ConvexFlux>(&f))
    return c->d2a;
  return {};
}

} // namespace hyperstat
