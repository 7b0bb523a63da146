#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbo/littlewood_paley.hpp"
#include "gbo/trajectory.hpp"

namespace gbo {

enum class NonlinearForm {
  TransportPower,  // u^k * du/dx
  DividedFlux      // d/dx(u^{k+1}) / (k+1); equal by calculus
};

struct SolverConfig {
  int k = 4;
  double sign = 1.0;  // sign of the u^k u_x term; +1 is the default choice
  double dt = 1e-3;
  long steps = 1000;
  long stride = 1;  // record every stride-th step; must divide steps
  NonlinearForm form = NonlinearForm::TransportPower;
  bool disable_nonlinearity = false;  // test hook: pure free evolution
  double blowup_threshold = 1e6;      // H^1 proxy for loss of regularity
};

struct ConservationReport {
  double mass_initial = 0.0;
  double l2_squared_initial = 0.0;
  double mass_drift = 0.0;  // relative, max over recorded frames
  double l2_drift = 0.0;
};

struct SolveResult {
  Trajectory trajectory;
  ConservationReport conservation;
  std::vector<std::string> warnings;
};

/// Integrating-factor RK4 for du/dt + H d^2u/dx^2 + sign * u^k du/dx = 0.
/// The stiff linear phase is applied exactly through the free group; the
/// nonlinearity is evaluated alias-free. dt < 0 integrates backward; the
/// returned trajectory is always indexed with increasing time.
SolveResult solve_gbo(const Field& u0, const SolverConfig& cfg);

/// Same stepper for the linear equation
///   du/dt + H d^2u/dx^2 + paraproduct(V(t) u0_data, u) = forcing,
/// u(0) = phi. The transport coefficient is propagated exactly to stage
/// times; the optional forcing is interpolated linearly between its nodes.
SolveResult solve_linearized(const Field& u0_data, const Field& phi,
                             const std::optional<Trajectory>& forcing,
                             const SolverConfig& cfg,
                             const BlockRange& range);

/// t_m -> integral over [0, t_m] of free_propagate(t_m - t', f(t')) dt',
/// by the trapezoid rule on the trajectory's own nodes. Needs >= 3 nodes
/// and t0 = 0.
Trajectory duhamel(const Trajectory& f,
                   Dispersion kind = Dispersion::BenjaminOno);

/// Homogeneous solution sampled on uniform nodes: frame m equals
/// free_propagate(t0 + m*dt, phi).
Trajectory free_trajectory(const Field& phi, double t0, double dt,
                           std::size_t node_count,
                           Dispersion kind = Dispersion::BenjaminOno);

}  // namespace gbo
