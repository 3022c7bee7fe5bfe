#pragma once

#include "hyperstat/density/bandwidth.hpp"
#include "hyperstat/density/kde.hpp"
#include "hyperstat/ensemble/param_law.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hyperstat {

struct RateStudy {
  std::vector<double> counts = {1e3, 4e3, 1.6e4, 6.4e4};
  std::size_t repetitions = 20;
  int beta = 2;
  double alpha = 1.0;
  std::uint64_t seed = 7;
  /// Evaluation grid for the sup over y.
  Axis grid = Axis(-4.0, 4.0, 160);
};

/// Sup over the grid of the Monte Carlo mean squared error of the Gaussian
/// KDE of a standard normal target, for each sample count, and the log-log
/// slope of that error against N.
inline RateFit kde_rate_study(const RateStudy& st)
{
  std::vector<double> target(st.grid.size());
  for (std::size_t k = 0; k < target.size(); ++k)
    target[k] = kernels::gaussian(st.grid.center(k));
  std::vector<double> errors;
  for (std::size_t c = 0; c < st.counts.size(); ++c) {
    const auto n = static_cast<std::size_t>(st.counts[c]);
    const KernelSpec k{KernelShape::gaussian, bandwidth_rule(n, st.beta, st.alpha)};
    std::vector<double> mse(st.grid.size(), 0.0);
    std::vector<double> ys(n);
    for (std::size_t r = 0; r < st.repetitions; ++r) {
      auto eng = sample_engine(st.seed, c * 1000003u + r);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& y : ys)
        y = normal(eng);
      const auto p = kde(ys, k, st.grid);
      for (std::size_t i = 0; i < p.size(); ++i)
        mse[i] += (p[i] - target[i]) * (p[i] - target[i]);
    }
    double sup = 0.0;
    for (double m : mse)
      sup = std::max(sup, m / static_cast<double>(st.repetitions));
    errors.push_back(sup);
  }
  return rate_fit(st.counts, errors);
}

} // namespace hyperstat
