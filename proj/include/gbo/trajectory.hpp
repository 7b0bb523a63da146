#pragma once

#include <vector>

#include "gbo/field.hpp"

namespace gbo {

/// Uniformly sampled time slices of a field: frame m lives at time
/// t0 + m*dt. All frames share one grid; dt > 0.
class Trajectory {
 public:
  Trajectory(double t0, double dt, std::vector<Field> frames);

  /// Validates that `times` is uniform to 1e-12 (relative to the step).
  static Trajectory from_times(const std::vector<double>& times,
                               std::vector<Field> frames);

  const SpectralGrid& grid() const { return frames_.front().grid(); }
  std::size_t node_count() const noexcept { return frames_.size(); }
  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  double time(std::size_t m) const noexcept {
    return t0_ + static_cast<double>(m) * dt_;
  }
  double duration() const noexcept {
    return static_cast<double>(frames_.size() - 1) * dt_;
  }

  const Field& frame(std::size_t m) const { return frames_[m]; }
  Field& frame(std::size_t m) { return frames_[m]; }
  const std::vector<Field>& frames() const noexcept { return frames_; }

  /// First `count` nodes as a new trajectory.
  Trajectory prefix(std::size_t count) const;

 private:
  double t0_;
  double dt_;
  std::vector<Field> frames_;
};

/// Node-wise difference; grids and time nodes must match.
Trajectory operator-(const Trajectory& a, const Trajectory& b);

/// Constant-in-time trajectory with the given nodes.
Trajectory constant_trajectory(const Field& phi, double t0, double dt,
                               std::size_t node_count);

/// max over nodes of the L^2 distance between frames.
double sup_l2_distance(const Trajectory& a, const Trajectory& b);

}  // namespace gbo
