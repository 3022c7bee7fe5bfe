#pragma once

#include "hyperstat/core/io.hpp"
#include "hyperstat/ensemble/ensemble.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace hyperstat {

// Ensemble snapshot: one line "# ensemble samples=<N> seed=<s>", then per
// sample a line "# omega <w_0> <w_1> ..." followed by a spatial field block.

inline void write_ensemble(std::ostream& os, const Ensemble& e)
{
  os << "# ensemble samples=" << e.size() << " seed=" << e.seed() << '\n';
  for (std::size_t i = 0; i < e.size(); ++i) {
    os << "# omega";
    for (double w : e.samples()[i])
      os << ' ' << format_real(w);
    os << '\n';
    write_field(os, e.field(i));
  }
}

inline Ensemble read_ensemble(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ensemble ", 0) != 0)
    throw ConfigError("ensemble reader: missing header line");
  std::size_t n = 0;
  std::uint64_t seed = 0;
  {
    std::istringstream ss(line.substr(11));
    std::string tok;
    while (ss >> tok) {
      if (tok.rfind("samples=", 0) == 0)
        n = std::stoul(tok.substr(8));
      else if (tok.rfind("seed=", 0) == 0)
        seed = std::stoull(tok.substr(5));
    }
  }
  if (n == 0)
    throw ConfigError("ensemble reader: no samples");
  std::vector<std::vector<double>> omegas(n);
  std::vector<SpatialField> fields;
  fields.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line) || line.rfind("# omega", 0) != 0)
      throw ConfigError("ensemble reader: missing omega line for sample " + std::to_string(i));
    std::istringstream ss(line.substr(7));
    double w = 0.0;
    while (ss >> w)
      omegas[i].push_back(w);
    fields.push_back(read_spatial_field(is));
    is >> std::ws;
  }
  Ensemble e(fields.front().axis, std::move(omegas), seed, fields.front().time);
  for (std::size_t i = 0; i < n; ++i)
    e.set_field(i, fields[i]);
  return e;
}

} // namespace hyperstat
