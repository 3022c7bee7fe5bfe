#pragma once

#include "hyperstat/core/axis.hpp"

#include <array>
#include <cstddef>
#include <numeric>
#include <vector>

namespace hyperstat {

/// Tensor grid over physical coordinates followed by state coordinates.
/// Storage is row-major in the order spatial axes, then state axes, so the
/// state index varies fastest.
class PhaseGrid {
public:
  static constexpr std::size_t max_axes = 6;

  PhaseGrid() = default;

  PhaseGrid(std::vector<Axis> spatial, std::vector<Axis> state)
    : spatial_(std::move(spatial)), state_(std::move(state))
  {
    if (spatial_.empty())
      throw ConfigError("PhaseGrid: need at least one spatial axis");
    if (state_.empty())
      throw ConfigError("PhaseGrid: need at least one state axis");
    if (spatial_.size() + state_.size() > max_axes)
      throw ConfigError("PhaseGrid: too many axes");
  }

  const std::vector<Axis>& spatial() const { return spatial_; }
  const std::vector<Axis>& state() const { return state_; }
  const Axis& spatial(std::size_t i) const { return spatial_.at(i); }
  const Axis& state(std::size_t i) const { return state_.at(i); }

  std::size_t rank() const { return spatial_.size() + state_.size(); }
  const Axis& axis(std::size_t i) const
  {
    return i < spatial_.size() ? spatial_.at(i) : state_.at(i - spatial_.size());
  }

  std::size_t spatial_size() const
  {
    std::size_t n = 1;
    for (const auto& a : spatial_)
      n *= a.size();
    return n;
  }
  std::size_t state_size() const
  {
    std::size_t n = 1;
    for (const auto& a : state_)
      n *= a.size();
    return n;
  }
  std::size_t size() const { return spatial_size() * state_size(); }

  /// Product of sizes of axes after axis i (the stride of axis i).
  std::size_t stride(std::size_t i) const
  {
    std::size_t s = 1;
    for (std::size_t k = i + 1; k < rank(); ++k)
      s *= axis(k).size();
    return s;
  }

  double state_cell_volume() const
  {
    double v = 1.0;
    for (const auto& a : state_)
      v *= a.spacing();
    return v;
  }
  double spatial_cell_volume() const
  {
    double v = 1.0;
    for (const auto& a : spatial_)
      v *= a.spacing();
    return v;
  }
  double cell_volume() const { return state_cell_volume() * spatial_cell_volume(); }

  friend bool operator==(const PhaseGrid& a, const PhaseGrid& b)
  {
    return a.spatial_ == b.spatial_ && a.state_ == b.state_;
  }

private:
  std::vector<Axis> spatial_;
  std::vector<Axis> state_;
};

} // namespace hyperstat
