#pragma once

#include "hyperstat/core/errors.hpp"
#include "hyperstat/core/io.hpp"
#include "hyperstat/density/estimate.hpp"
#include "hyperstat/evolve/nonlocal.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace hyperstat {

inline const std::vector<std::string>& known_routes()
{
  static const std::vector<std::string> r{"mc-kde", "mc-kde-paired", "pdf-evolve", "cdf-exact",
                                          "cdf-fv", "pdf-nonlocal",  "two-point"};
  return r;
}

struct RunConfig {
  std::string scenario;
  std::string paired_scenario;
  double t_final = 0.0;
  double dt = 0.0025;
  double mc_dt = 0.0;  ///< realization step; 0 means dt
  double dx = 0.01;
  double du = 0.01;
  double dy = 0.1;     ///< two-point route spatial spacing (both x and y)
  double dv = 0.25;    ///< two-point route state spacing (both U and V)
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  KernelShape kernel = KernelShape::gaussian;
  double bandwidth = 0.02;
  BandwidthMode bandwidth_mode = BandwidthMode::fixed;
  std::vector<std::string> routes;
  std::string output_dir = "out";
  Limiter limiter = Limiter::minmod;     ///< CDF transport routes
  Limiter pdf_limiter = Limiter::none;   ///< linear PDF transport route
  Limiter mc_limiter = Limiter::none;
  double theta = 1.5;
  WaveSpeeds wave_speeds = WaveSpeeds::spectral;
  Reconstruction reconstruction = Reconstruction::cumulative;
  std::size_t margin = 2;
  bool write_fields = true;

  double realization_dt() const { return mc_dt > 0.0 ? mc_dt : dt; }
  bool has_route(const std::string& r) const
  {
    for (const auto& x : routes)
      if (x == r)
        return true;
    return false;
  }
};

namespace detail {

inline std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& v)
{
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(x))
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  return x;
}

inline std::uint64_t parse_count(const std::string& key, const std::string& v)
{
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("config: '" + key + "' expects a nonnegative integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' is out of range");
  }
}

inline double parse_positive(const std::string& key, const std::string& v)
{
  const double x = parse_real(key, v);
  if (!(x > 0.0))
    throw ConfigError("config: '" + key + "' must be positive");
  return x;
}

inline Limiter parse_limiter(const std::string& key, const std::string& v)
{
  if (v == "none")
    return Limiter::none;
  if (v == "minmod")
    return Limiter::minmod;
  throw ConfigError("config: '" + key + "' must be none or minmod");
}

inline std::string limiter_name(Limiter l) { return l == Limiter::none ? "none" : "minmod"; }

inline void set_key(RunConfig& c, const std::string& key, const std::string& v)
{
  if (key == "scenario")
    c.scenario = v;
  else if (key == "paired_scenario")
    c.paired_scenario = v;
  else if (key == "t_final") {
    c.t_final = parse_real(key, v);
    if (!(c.t_final >= 0.0))
      throw ConfigError("config: 't_final' must be nonnegative");
  } else if (key == "dt")
    c.dt = parse_positive(key, v);
  else if (key == "mc_dt")
    c.mc_dt = parse_positive(key, v);
  else if (key == "dx")
    c.dx = parse_positive(key, v);
  else if (key == "du")
    c.du = parse_positive(key, v);
  else if (key == "dy")
    c.dy = parse_positive(key, v);
  else if (key == "dv")
    c.dv = parse_positive(key, v);
  else if (key == "samples") {
    c.samples = parse_count(key, v);
    if (c.samples == 0)
      throw ConfigError("config: 'samples' must be at least 1");
  } else if (key == "seed")
    c.seed = parse_count(key, v);
  else if (key == "kernel")
    c.kernel = parse_kernel(v);
  else if (key == "bandwidth") {
    if (v == "normal-reference")
      c.bandwidth_mode = BandwidthMode::normal_reference;
    else {
      c.bandwidth_mode = BandwidthMode::fixed;
      c.bandwidth = parse_positive(key, v);
    }
  } else if (key == "routes") {
    c.routes.clear();
    std::stringstream ss(v);
    std::string r;
    while (std::getline(ss, r, ',')) {
      r = trim(r);
      bool ok = false;
      for (const auto& k : known_routes())
        ok = ok || k == r;
      if (!ok)
        throw ConfigError("config: unknown route '" + r + "'");
      if (!c.has_route(r))
        c.routes.push_back(r);
    }
  } else if (key == "output_dir")
    c.output_dir = v;
  else if (key == "limiter")
    c.limiter = parse_limiter(key, v);
  else if (key == "pdf_limiter")
    c.pdf_limiter = parse_limiter(key, v);
  else if (key == "mc_limiter")
    c.mc_limiter = parse_limiter(key, v);
  else if (key == "theta")
    c.theta = parse_real(key, v);
  else if (key == "reconstruction") {
    if (v == "density")
      c.reconstruction = Reconstruction::density;
    else if (v == "cumulative")
      c.reconstruction = Reconstruction::cumulative;
    else
      throw ConfigError("config: 'reconstruction' must be density or cumulative");
  } else if (key == "wave_speeds") {
    if (v == "spectral")
      c.wave_speeds = WaveSpeeds::spectral;
    else if (v == "per-state")
      c.wave_speeds = WaveSpeeds::per_state;
    else
      throw ConfigError("config: 'wave_speeds' must be spectral or per-state");
  } else if (key == "margin")
    c.margin = parse_count(key, v);
  else if (key == "write_fields") {
    if (v != "true" && v != "false")
      throw ConfigError("config: 'write_fields' must be true or false");
    c.write_fields = v == "true";
  } else
    throw ConfigError("config: unknown key '" + key + "'");
}

} // namespace detail

/// Check cross-field consistency that single keys cannot.
inline void validate(const RunConfig& c)
{
  if (c.scenario.empty())
    throw ConfigError("config: 'scenario' is required");
  if (c.routes.empty())
    throw ConfigError("config: 'routes' is required");
  if (c.has_route("mc-kde-paired") && c.paired_scenario.empty())
    throw ConfigError("config: route mc-kde-paired needs 'paired_scenario'");
  if (!(c.theta >= 1.0 && c.theta <= 2.0))
    throw ConfigError("config: 'theta' must lie in [1, 2]");
}

/// Parse flat key = value text. Blank lines and lines starting with '#' are
/// ignored; unknown keys and repeated keys are errors.
inline RunConfig parse_config(std::istream& is)
{
  RunConfig c;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (seen[key]++)
      throw ConfigError("config: key '" + key + "' given twice");
    detail::set_key(c, key, value);
  }
  return c;
}

inline RunConfig parse_config_text(const std::string& text)
{
  std::istringstream is(text);
  return parse_config(is);
}

inline RunConfig load_config(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(is);
}

/// HYPERSTAT_SEED and HYPERSTAT_OUTPUT_DIR take precedence over the file.
inline void apply_environment(RunConfig& c)
{
  if (const char* s = std::getenv("HYPERSTAT_SEED"))
    c.seed = detail::parse_count("HYPERSTAT_SEED", s);
  if (const char* d = std::getenv("HYPERSTAT_OUTPUT_DIR"))
    c.output_dir = d;
}

/// Effective configuration as key = value lines, in a fixed order. Parsing
/// this text reproduces the configuration.
inline std::string echo_config(const RunConfig& c)
{
  std::ostringstream os;
  os << "scenario = " << c.scenario << '\n';
  if (!c.paired_scenario.empty())
    os << "paired_scenario = " << c.paired_scenario << '\n';
  os << "t_final = " << format_real(c.t_final) << '\n';
  os << "dt = " << format_real(c.dt) << '\n';
  if (c.mc_dt > 0.0)
    os << "mc_dt = " << format_real(c.mc_dt) << '\n';
  os << "dx = " << format_real(c.dx) << '\n';
  os << "du = " << format_real(c.du) << '\n';
  os << "dy = " << format_real(c.dy) << '\n';
  os << "dv = " << format_real(c.dv) << '\n';
  os << "samples = " << c.samples << '\n';
  os << "seed = " << c.seed << '\n';
  os << "kernel = " << kernel_name(c.kernel) << '\n';
  os << "bandwidth = "
     << (c.bandwidth_mode == BandwidthMode::normal_reference ? std::string("normal-reference")
                                                             : format_real(c.bandwidth))
     << '\n';
  os << "routes = ";
  for (std::size_t i = 0; i < c.routes.size(); ++i)
    os << (i ? "," : "") << c.routes[i];
  os << '\n';
  os << "output_dir = " << c.output_dir << '\n';
  os << "limiter = " << detail::limiter_name(c.limiter) << '\n';
  os << "pdf_limiter = " << detail::limiter_name(c.pdf_limiter) << '\n';
  os << "mc_limiter = " << detail::limiter_name(c.mc_limiter) << '\n';
  os << "theta = " << format_real(c.theta) << '\n';
  os << "wave_speeds = " << (c.wave_speeds == WaveSpeeds::spectral ? "spectral" : "per-state") << '\n';
  os << "reconstruction = " << (c.reconstruction == Reconstruction::density ? "density" : "cumulative") << '\n';
  os << "margin = " << c.margin << '\n';
  os << "write_fields = " << (c.write_fields ? "true" : "false") << '\n';
  return os.str();
}

} // namespace hyperstat
