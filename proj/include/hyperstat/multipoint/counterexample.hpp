#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hyperstat {

/// Law of (u, v) on finitely many atoms.
using AtomicLaw = std::map<std::pair<double, double>, double>;

/// Random initial data of the wave system on Omega = {0, 1}, given at
/// x = -1 and x = +1 only. Index 0 is omega = 0.
struct TwoAtomData {
  double u_minus[2];
  double u_plus[2];
  double v_minus[2];
  double v_plus[2];
};

struct CounterexampleReport {
  AtomicLaw initial1_minus, initial1_plus, initial2_minus, initial2_plus;
  AtomicLaw final1, final2;
  bool initial_statistics_equal = false;
  double phi1_at_11 = 0.0;
  double phi2_at_11 = 0.0;
  /// The same evaluation with both wave directions reversed.
  double phi1_at_11_reversed = 0.0;
  double phi2_at_11_reversed = 0.0;
};

namespace detail {

inline AtomicLaw atom_law(const double u[2], const double v[2])
{
  AtomicLaw law;
  for (int w = 0; w < 2; ++w)
    law[{u[w], v[w]}] += 0.5;
  return law;
}

inline double mass_at(const AtomicLaw& law, double u, double v)
{
  const auto it = law.find({u, v});
  return it == law.end() ? 0.0 : it->second;
}

} // namespace detail

/// Law of (u(1, 0), v(1, 0)) for u_t + cu u_x = 0, v_t + cv v_x = 0 with
/// cu = -cv = +-1, so that each component at (1, 0) is read off x = cu or
/// x = cv at t = 0.
inline AtomicLaw wave_law_at_origin(const TwoAtomData& d, double cu)
{
  const double* u = cu > 0.0 ? d.u_minus : d.u_plus;
  const double* v = cu > 0.0 ? d.v_plus : d.v_minus;
  return detail::atom_law(u, v);
}

inline std::pair<TwoAtomData, TwoAtomData> counterexample_data()
{
  TwoAtomData a{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  TwoAtomData b{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  return {a, b};
}

/// Two data sets with equal one-point laws at x = +-1 whose joint laws at
/// (t, x) = (1, 0) differ. The reported phi values use the orientation
/// u(t, x) = u(0, x + t), v(t, x) = v(0, x - t), which carries the tabulated
/// values at x = +1 (u) and x = -1 (v) to the origin.
inline CounterexampleReport wave_system_counterexample()
{
  const auto [a, b] = counterexample_data();
  CounterexampleReport r;
  r.initial1_minus = detail::atom_law(a.u_minus, a.v_minus);
  r.initial1_plus = detail::atom_law(a.u_plus, a.v_plus);
  r.initial2_minus = detail::atom_law(b.u_minus, b.v_minus);
  r.initial2_plus = detail::atom_law(b.u_plus, b.v_plus);
  r.initial_statistics_equal = r.initial1_minus == r.initial2_minus && r.initial1_plus == r.initial2_plus;
  r.final1 = wave_law_at_origin(a, -1.0);
  r.final2 = wave_law_at_origin(b, -1.0);
  r.phi1_at_11 = detail::mass_at(r.final1, 1.0, 1.0);
  r.phi2_at_11 = detail::mass_at(r.final2, 1.0, 1.0);
  r.phi1_at_11_reversed = detail::mass_at(wave_law_at_origin(a, 1.0), 1.0, 1.0);
  r.phi2_at_11_reversed = detail::mass_at(wave_law_at_origin(b, 1.0), 1.0, 1.0);
  return r;
}

inline std::string format_law(const AtomicLaw& law)
{
  std::string s;
  for (const auto& [uv, p] : law) {
    if (!s.empty())
      s += ", ";
    s += "(" + std::to_string(static_cast<int>(uv.first)) + "," + std::to_string(static_cast<int>(uv.second)) +
         "): " + (p == 0.5 ? "1/2" : p == 1.0 ? "1" : std::to_string(p));
  }
  return "{" + s + "}";
}

} // namespace hyperstat
