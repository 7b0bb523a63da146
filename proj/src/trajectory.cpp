#include "gbo/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace gbo {

Trajectory::Trajectory(double t0, double dt, std::vector<Field> frames)
    : t0_(t0), dt_(dt), frames_(std::move(frames)) {
  if (frames_.empty())
    throw StructuralError("trajectory requires at least one frame");
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0))
    throw StructuralError("trajectory requires finite t0 and dt > 0");
  for (const auto& f : frames_)
    require_same_grid(f.grid(), frames_.front().grid(), "trajectory");
}

Trajectory Trajectory::from_times(const std::vector<double>& times,
                                  std::vector<Field> frames) {
  if (times.size() != frames.size())
    throw StructuralError("trajectory: times/frames length mismatch");
  if (times.size() < 2)
    throw StructuralError("trajectory: from_times needs >= 2 nodes");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0))
    throw StructuralError("trajectory: times must be strictly increasing");
  for (std::size_t m = 1; m < times.size(); ++m) {
    const double step = times[m] - times[m - 1];
    if (std::abs(step - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
      throw StructuralError("trajectory: times must be uniform to 1e-12");
  }
  return Trajectory(times.front(), dt, std::move(frames));
}

Trajectory Trajectory::prefix(std::size_t count) const {
  if (count < 1 || count > frames_.size())
    throw StructuralError("trajectory prefix: bad node count");
  return Trajectory(t0_, dt_,
                    std::vector<Field>(frames_.begin(),
                                       frames_.begin() +
                                           static_cast<std::ptrdiff_t>(count)));
}

Trajectory operator-(const Trajectory& a, const Trajectory& b) {
  if (a.node_count() != b.node_count() || a.t0() != b.t0() ||
      std::abs(a.dt() - b.dt()) > 1e-12 * a.dt())
    throw StructuralError("trajectory difference: time nodes mismatch");
  std::vector<Field> frames;
  frames.reserve(a.node_count());
  for (std::size_t m = 0; m < a.node_count(); ++m)
    frames.push_back(a.frame(m) - b.frame(m));
  return Trajectory(a.t0(), a.dt(), std::move(frames));
}

Trajectory constant_trajectory(const Field& phi, double t0, double dt,
                               std::size_t node_count) {
  return Trajectory(t0, dt, std::vector<Field>(node_count, phi));
}

double sup_l2_distance(const Trajectory& a, const Trajectory& b) {
  if (a.node_count() != b.node_count())
    throw StructuralError("sup_l2_distance: node count mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.node_count(); ++i)
    m = std::max(m, l2_distance(a.frame(i), b.frame(i)));
  return m;
}

}  // namespace gbo
