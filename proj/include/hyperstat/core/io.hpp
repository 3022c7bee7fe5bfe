#pragma once

#include "hyperstat/core/fields.hpp"

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace hyperstat {

// Plain-text column format. One header line
//   # time=<t> spatial=<m> axes=<lo>:<hi>:<n>,<lo>:<hi>:<n>,...
// followed by one row per cell: every axis coordinate, then the value.

inline std::string format_real(double v)
{
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

namespace detail {

inline std::string axis_token(const Axis& a)
{
  return format_real(a.lo()) + ":" + format_real(a.hi()) + ":" + std::to_string(a.size());
}

inline void write_header(std::ostream& os, double time, std::size_t spatial, const std::vector<Axis>& axes)
{
  os << "# time=" << format_real(time) << " spatial=" << spatial << " axes=";
  for (std::size_t i = 0; i < axes.size(); ++i)
    os << (i ? "," : "") << axis_token(axes[i]);
  os << '\n';
}

struct Header {
  double time = 0.0;
  std::size_t spatial = 0;
  std::vector<Axis> axes;
};

inline Header read_header(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line) || line.rfind("# time=", 0) != 0)
    throw ConfigError("field reader: missing header line");
  Header h;
  std::istringstream ss(line.substr(2));
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ConfigError("field reader: malformed header token '" + tok + "'");
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    if (key == "time") {
      h.time = std::stod(val);
    } else if (key == "spatial") {
      h.spatial = std::stoul(val);
    } else if (key == "axes") {
      std::istringstream as(val);
      std::string ax;
      while (std::getline(as, ax, ',')) {
        const auto c1 = ax.find(':');
        const auto c2 = ax.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
          throw ConfigError("field reader: malformed axis '" + ax + "'");
        h.axes.emplace_back(std::stod(ax.substr(0, c1)), std::stod(ax.substr(c1 + 1, c2 - c1 - 1)),
                            std::stoul(ax.substr(c2 + 1)));
      }
    }
  }
  return h;
}

} // namespace detail

inline void write_field(std::ostream& os, const PhaseField& f)
{
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < f.grid.rank(); ++i)
    axes.push_back(f.grid.axis(i));
  detail::write_header(os, f.time, f.grid.spatial().size(), axes);

  const std::size_t rank = axes.size();
  std::vector<std::size_t> idx(rank, 0);
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    std::size_t rem = c;
    for (std::size_t i = rank; i-- > 0;) {
      idx[i] = rem % axes[i].size();
      rem /= axes[i].size();
    }
    for (std::size_t i = 0; i < rank; ++i)
      os << format_real(axes[i].center(idx[i])) << ' ';
    os << format_real(f.values[c]) << '\n';
  }
}

inline void write_field(std::ostream& os, const SpatialField& f)
{
  detail::write_header(os, f.time, 1, {f.axis});
  for (std::size_t j = 0; j < f.values.size(); ++j)
    os << format_real(f.axis.center(j)) << ' ' << format_real(f.values[j]) << '\n';
}

inline PhaseField read_phase_field(std::istream& is)
{
  auto h = detail::read_header(is);
  if (h.spatial == 0 || h.spatial >= h.axes.size())
    throw ConfigError("field reader: header does not describe a phase field");
  std::vector<Axis> spatial(h.axes.begin(), h.axes.begin() + static_cast<std::ptrdiff_t>(h.spatial));
  std::vector<Axis> state(h.axes.begin() + static_cast<std::ptrdiff_t>(h.spatial), h.axes.end());
  PhaseField f(PhaseGrid(spatial, state), h.time);
  const std::size_t rank = h.axes.size();
  for (auto& v : f.values) {
    double coord = 0.0;
    for (std::size_t i = 0; i < rank; ++i)
      is >> coord;
    if (!(is >> v))
      throw ConfigError("field reader: truncated body");
  }
  return f;
}

inline SpatialField read_spatial_field(std::istream& is)
{
  auto h = detail::read_header(is);
  if (h.axes.size() != 1)
    throw ConfigError("field reader: header does not describe a spatial field");
  SpatialField f(h.axes[0], h.time);
  for (auto& v : f.values) {
    double coord = 0.0;
    if (!(is >> coord >> v))
      throw ConfigError("field reader: truncated body");
  }
  return f;
}

} // namespace hyperstat
