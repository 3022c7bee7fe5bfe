#pragma once

#include "hyperstat/core/errors.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace hyperstat {

struct Uniform01 {};
struct BernoulliHalf {};
/// Multivariate normal with the given mean and (symmetric positive
/// semi-definite) covariance, row-major.
struct GaussianLaw {
  std::vector<double> mean;
  std::vector<double> covariance;
};
/// Degenerate law concentrated on one parameter vector.
struct PointMass {
  std::vector<double> at;
};

using ParamLaw = std::variant<Uniform01, BernoulliHalf, GaussianLaw, PointMass>;

inline std::size_t parameter_dimension(const ParamLaw& law)
{
  if (const auto* g = std::get_if<GaussianLaw>(&law))
    return g->mean.size();
  if (const auto* p = std::get_if<PointMass>(&law))
    return p->at.size();
  return 1;
}

/// Engine for sample `index` of a run seeded with `seed`. Each sample owns an
/// independent stream keyed by (seed, index), so draws do not depend on the
/// order in which samples are generated.
inline std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace detail {

/// Lower-triangular Cholesky factor; tolerates zero pivots (semi-definite).
inline std::vector<double> cholesky(const std::vector<double>& a, std::size_t n)
{
  if (a.size() != n * n)
    throw ConfigError("GaussianLaw: covariance must be n x n");
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k)
        s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (s < -1e-12)
          throw ConfigError("GaussianLaw: covariance is not positive semi-definite");
        l[i * n + i] = std::sqrt(std::max(s, 0.0));
      } else {
        l[i * n + j] = l[j * n + j] > 0.0 ? s / l[j * n + j] : 0.0;
      }
    }
  }
  return l;
}

} // namespace detail

inline std::vector<double> draw_parameter(const ParamLaw& law, std::mt19937_64& eng)
{
  return std::visit(
      [&](const auto& l) -> std::vector<double> {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, Uniform01>) {
          return {std::uniform_real_distribution<double>(0.0, 1.0)(eng)};
        } else if constexpr (std::is_same_v<L, BernoulliHalf>) {
          return {std::bernoulli_distribution(0.5)(eng) ? 1.0 : 0.0};
        } else if constexpr (std::is_same_v<L, GaussianLaw>) {
          const std::size_t n = l.mean.size();
          const auto chol = detail::cholesky(l.covariance, n);
          std::normal_distribution<double> normal(0.0, 1.0);
          std::vector<double> z(n);
          for (auto& v : z)
            v = normal(eng);
          std::vector<double> out(l.mean);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k <= i; ++k)
              out[i] += chol[i * n + k] * z[k];
          return out;
        } else {
          return l.at;
        }
      },
      law);
}

} // namespace hyperstat
