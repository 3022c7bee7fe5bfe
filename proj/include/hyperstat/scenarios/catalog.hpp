#pragma once

#include "hyperstat/core/fields.hpp"
#include "hyperstat/core/io.hpp"
#include "hyperstat/scenarios/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace hyperstat {

namespace profiles {

inline double tent(double x) { return std::max(1.0 - 9.0 * x * x, 0.0); }

inline double smooth_step(double x) { return 0.5 * (1.0 + std::tanh(40.0 * x)); }

/// Piecewise-linear ramp from 0 down to -1 on [-1/4, 1/4].
inline double ramp(double x)
{
  if (x < -0.25)
    return 0.0;
  if (x < 0.25)
    return -2.0 * x - 0.5;
  return -1.0;
}

inline double bump(double x, double c) { return std::exp(-10.0 * (x - c) * (x - c)) + 1.0; }

/// CDF of w * p for w ~ unif[0, 1]; an atom at zero when |p| <= tol, where
/// the value at U = 0 is taken as 1/2 (the mean of the one-sided limits).
inline double scaled_uniform_cdf(double p, double u, double tol)
{
  if (p > tol)
    return std::min(std::max(u / p, 0.0), 1.0);
  if (p < -tol)
    return std::max(1.0 - std::max(u / p, 0.0), 0.0);
  if (std::abs(u) <= 1e-12)
    return 0.5;
  return u > 0.0 ? 1.0 : 0.0;
}

inline double scaled_uniform_pdf(double p, double u, double tol)
{
  if (std::abs(p) <= tol)
    return 0.0;
  const double lo = std::min(p, 0.0);
  const double hi = std::max(p, 0.0);
  return (u >= lo && u <= hi) ? 1.0 / std::abs(p) : 0.0;
}

} // namespace profiles

inline const std::vector<std::string>& scenario_names()
{
  static const std::vector<std::string> names{"linear-het-u",  "linear-het-v", "linear-2param", "rarefaction-u",
                                              "rarefaction-v", "shock-u",      "shock-v"};
  return names;
}

namespace detail {

inline Scenario linear_het(bool paired)
{
  Scenario sc;
  sc.name = paired ? "linear-het-v" : "linear-het-u";
  sc.flux = LinearSpeed{[](double x) { return 0.1 * x * x + 1.0; }};
  sc.law = Uniform01{};
  if (paired)
    sc.initial_data = [](std::span<const double> w, double x) {
      return w[0] * profiles::tent(x + 1.0) + (1.0 - w[0]) * profiles::tent(x - 1.0);
    };
  else
    sc.initial_data = [](std::span<const double> w, double x) {
      return w[0] * (profiles::tent(x + 1.0) + profiles::tent(x - 1.0));
    };
  auto p = [](double x) { return profiles::tent(x + 1.0) + profiles::tent(x - 1.0); };
  sc.initial_cdf = [p](double x, double u) { return profiles::scaled_uniform_cdf(p(x), u, 0.0); };
  sc.initial_pdf = [p](double x, double u) { return profiles::scaled_uniform_pdf(p(x), u, 0.0); };
  sc.domain = {-3.0, 4.0};
  sc.state_range = {-0.25, 1.25};
  sc.boundary = Boundary::outflow;
  sc.state_anchor = 0.0;
  sc.constants = {{"speed", "s(x) = 0.1*x^2 + 1"},
                  {"profile", "g(x) = max(1 - (3x)^2, 0)"},
                  {"initial_data", paired ? "w*g(x+1) + (1-w)*g(x-1)" : "w*(g(x+1) + g(x-1))"},
                  {"law", "w ~ unif[0,1]"}};
  return sc;
}

inline Scenario linear_2param()
{
  Scenario sc;
  sc.name = "linear-2param";
  // u_t = (1 - 0.1x^2) u_x, i.e. s(x) = 0.1x^2 - 1 in advective form.
  sc.flux = LinearSpeed{[](double x) { return 0.1 * x * x - 1.0; }};
  sc.law = GaussianLaw{{0.0, 1.0}, {1.0, 0.0, 0.0, 0.25}};
  sc.parameter_dim = 2;
  sc.initial_data = [](std::span<const double> g, double x) {
    return g[0] * profiles::bump(x, -1.0) + g[1] * profiles::bump(x, 1.0);
  };
  sc.initial_pdf = [](double x, double u) {
    const double g1 = profiles::bump(x, -1.0);
    const double g2 = profiles::bump(x, 1.0);
    const double var = g1 * g1 + 0.25 * g2 * g2;
    const double z = u - g2;
    return std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * std::numbers::pi * var);
  };
  sc.domain = {-2.0, 3.0};
  sc.state_range = {-10.0, 12.0};
  sc.boundary = Boundary::periodic;
  sc.constants = {{"speed", "s(x) = 0.1*x^2 - 1"},
                  {"g1", "exp(-10(x+1)^2) + 1"},
                  {"g2", "exp(-10(x-1)^2) + 1"},
                  {"initial_data", "gamma1*g1(x) + gamma2*g2(x)"},
                  {"law", "gamma ~ N((0,1), diag(1, 0.25))"},
                  {"initial_pdf", "N(g2(x), g1(x)^2 + 0.25*g2(x)^2)"}};
  return sc;
}

inline Scenario rarefaction(bool paired)
{
  Scenario sc;
  sc.name = paired ? "rarefaction-v" : "rarefaction-u";
  sc.flux = BurgersFlux{};
  sc.law = Uniform01{};
  auto g1 = [](double x) { return profiles::smooth_step(x); };
  auto g2 = [](double x) { return profiles::smooth_step(x) - 1.0; };
  if (paired)
    sc.initial_data = [=](std::span<const double> w, double x) {
      return w[0] * g2(x + 1.0) + (1.0 - w[0]) * g1(x - 1.0);
    };
  else
    sc.initial_data = [=](std::span<const double> w, double x) { return w[0] * (g1(x - 1.0) + g2(x + 1.0)); };
  auto p = [=](double x) { return g1(x - 1.0) + g2(x + 1.0); };
  sc.initial_cdf = [p](double x, double u) { return profiles::scaled_uniform_cdf(p(x), u, 1e-10); };
  sc.initial_pdf = [p](double x, double u) { return profiles::scaled_uniform_pdf(p(x), u, 1e-10); };
  sc.domain = {-3.0, 3.0};
  sc.state_range = {-1.05, 1.05};
  sc.boundary = Boundary::outflow;
  sc.state_anchor = 0.0;
  sc.constants = {{"flux_function", "a(u) = u^2/2"},
                  {"g1", "(1 + tanh(40x))/2"},
                  {"g2", "g1(x) - 1"},
                  {"initial_data", paired ? "w*g2(x+1) + (1-w)*g1(x-1)" : "w*(g1(x-1) + g2(x+1))"},
                  {"law", "w ~ unif[0,1]"},
                  {"zero_threshold", "1e-10"}};
  return sc;
}

inline Scenario shock(bool paired)
{
  Scenario sc;
  sc.name = paired ? "shock-v" : "shock-u";
  sc.flux = BurgersFlux{};
  sc.law = Uniform01{};
  auto g1 = [](double x) { return profiles::ramp(x); };
  auto g2 = [](double x) { return profiles::ramp(x) + 1.0; };
  if (paired)
    sc.initial_data = [=](std::span<const double> w, double x) {
      return w[0] * g2(x + 0.5) + (1.0 - w[0]) * g1(x - 0.5);
    };
  else
    sc.initial_data = [=](std::span<const double> w, double x) { return w[0] * (g1(x - 0.5) + g2(x + 0.5)); };
  auto p = [=](double x) { return g1(x - 0.5) + g2(x + 0.5); };
  sc.initial_cdf = [p](double x, double u) { return profiles::scaled_uniform_cdf(p(x), u, 0.0); };
  sc.initial_pdf = [p](double x, double u) { return profiles::scaled_uniform_pdf(p(x), u, 0.0); };
  sc.domain = {-2.0, 2.0};
  sc.state_range = {-1.3, 1.3};
  sc.boundary = Boundary::outflow;
  sc.state_anchor = 0.0;
  sc.validity = 0.5;
  sc.constants = {{"flux_function", "a(u) = u^2/2"},
                  {"g1", "0 (x < -1/4), -2x - 1/2 (-1/4 <= x < 1/4), -1 (x >= 1/4)"},
                  {"g2", "g1(x) + 1"},
                  {"initial_data", paired ? "w*g2(x+1/2) + (1-w)*g1(x-1/2)" : "w*(g1(x-1/2) + g2(x+1/2))"},
                  {"law", "w ~ unif[0,1]"},
                  {"shock_time", "1/(2w)"}};
  return sc;
}

} // namespace detail

inline Scenario build_scenario(const std::string& name)
{
  if (name == "linear-het-u" || name == "linear-het-v")
    return detail::linear_het(name.back() == 'v');
  if (name == "linear-2param")
    return detail::linear_2param();
  if (name == "rarefaction-u" || name == "rarefaction-v")
    return detail::rarefaction(name.back() == 'v');
  if (name == "shock-u" || name == "shock-v")
    return detail::shock(name.back() == 'v');
  throw ConfigError("unknown scenario '" + name + "'");
}

inline double initial_cdf_closed_form(const Scenario& sc, double x, double u)
{
  if (!sc.initial_cdf)
    throw ConfigError("scenario '" + sc.name + "' has no closed-form initial CDF");
  return sc.initial_cdf(x, u);
}

/// Closed-form initial density at x, evaluated at the centers of `u`.
inline std::vector<double> initial_pdf_closed_form(const Scenario& sc, double x, const Axis& u)
{
  if (!sc.initial_pdf)
    throw ConfigError("scenario '" + sc.name + "' has no closed-form initial PDF");
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k)
    out[k] = sc.initial_pdf(x, u.center(k));
  return out;
}

/// Initial CDF sampled at cell centers of the (x, U) grid.
inline CdfField initial_cdf_field(const Scenario& sc, const Axis& x, const Axis& u)
{
  if (!sc.initial_cdf)
    throw ConfigError("scenario '" + sc.name + "' has no closed-form initial CDF");
  return tabulate<CdfField>(x, u, sc.initial_cdf);
}

/// Initial density on the (x, U) grid. With a closed-form CDF each cell gets
/// its exact probability mass divided by dU, so atoms become one-cell
/// spikes and every slice has unit mass whenever the state range covers the
/// support. Otherwise the closed-form PDF is sampled at cell centers.
inline DensityField initial_density(const Scenario& sc, const Axis& x, const Axis& u)
{
  DensityField f(PhaseGrid({x}, {u}), 0.0);
  const std::size_t nu = u.size();
  if (sc.initial_cdf) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double xj = x.center(j);
      double below = sc.initial_cdf(xj, u.face(0));
      for (std::size_t k = 0; k < nu; ++k) {
        const double above = sc.initial_cdf(xj, u.face(k + 1));
        f.values[j * nu + k] = (above - below) / u.spacing();
        below = above;
      }
    }
    return f;
  }
  if (!sc.initial_pdf)
    throw ConfigError("scenario '" + sc.name + "' has no closed-form initial statistics");
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < nu; ++k)
      f.values[j * nu + k] = sc.initial_pdf(x.center(j), u.center(k));
  return f;
}

inline std::string boundary_name(Boundary b)
{
  switch (b) {
  case Boundary::outflow: return "outflow";
  case Boundary::periodic: return "periodic";
  case Boundary::wall: return "wall";
  }
  return "?";
}

/// Plain-text listing of everything that defines a scenario.
inline std::string dump_scenario(const Scenario& sc)
{
  std::ostringstream os;
  os << "name = " << sc.name << '\n';
  os << "flux = " << (is_linear(sc.flux) ? "linear" : "convex") << '\n';
  os << "parameter_dim = " << sc.parameter_dim << '\n';
  os << "domain = " << format_real(sc.domain.lo) << ':' << format_real(sc.domain.hi) << '\n';
  os << "state_range = " << format_real(sc.state_range.lo) << ':' << format_real(sc.state_range.hi) << '\n';
  os << "boundary = " << boundary_name(sc.boundary) << '\n';
  os << "validity = " << (sc.validity ? format_real(*sc.validity) : std::string("inf")) << '\n';
  os << "initial_cdf = " << (sc.initial_cdf ? "closed-form" : "none") << '\n';
  os << "initial_pdf = " << (sc.initial_pdf ? "closed-form" : "none") << '\n';
  for (const auto& [k, v] : sc.constants)
    os << k << " = " << v << '\n';
  return os.str();
}

} // namespace hyperstat
