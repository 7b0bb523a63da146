#include "gbo/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "gbo/fft.hpp"
#include "gbo/multipliers.hpp"

namespace gbo {

namespace {

using Coeffs = std::vector<complexd>;

void axpy(Coeffs& y, double a, const Coeffs& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

Coeffs scaled_sum(const Coeffs& a, double ca, const Coeffs& b, double cb) {
  Coeffs out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

void apply(const MultiplierSymbol& m, Coeffs& c) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m.values[i];
}

Coeffs applied(const MultiplierSymbol& m, const Coeffs& c) {
  Coeffs out(c);
  apply(m, out);
  return out;
}

double h1_norm(const SpectralGrid& grid, const Coeffs& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double xi = grid.wavenumber(i);
    s += (1.0 + xi * xi) * std::norm(c[i]);
  }
  return std::sqrt(grid.period() * s);
}

bool finite(const Coeffs& c) {
  for (const auto& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void validate_config(const SolverConfig& cfg) {
  if (cfg.k < 3) throw StructuralError("solver requires k >= 3");
  if (cfg.dt == 0.0 || !std::isfinite(cfg.dt))
    throw StructuralError("solver requires nonzero finite dt");
  if (cfg.sign != 1.0 && cfg.sign != -1.0)
    throw StructuralError("solver sign must be +1 or -1");
  if (cfg.steps < 1) throw StructuralError("solver requires steps >= 1");
  if (cfg.stride < 1 || cfg.steps % cfg.stride != 0)
    throw StructuralError("solver stride must be >= 1 and divide steps");
}

// Shared RK4 driver in the integrating-factor variable. The state is the
// coefficient vector of u itself; with E = V(dt/2) the classical scheme on
// w = V(-t)u becomes
//   A1 = N(t, u)                A2 = N(t + dt/2, E(u + dt/2 A1))
//   A3 = N(t + dt/2, Eu + dt/2 A2)   A4 = N(t + dt, E^2 u + dt E A3)
//   u <- E^2 u + dt/6 (E^2 A1 + 2E A2 + 2E A3 + A4),
// which applies the free group exactly and never needs absolute phases.
template <typename Nonlin>
SolveResult run_if_rk4(const Field& u0, const SolverConfig& cfg,
                       Nonlin&& nonlin, std::vector<std::string> warnings) {
  const SpectralGrid& grid = u0.grid();
  const double h = cfg.dt;
  const MultiplierSymbol E = propagator_symbol(grid, h / 2.0);
  const MultiplierSymbol E2 = propagator_symbol(grid, h);

  Coeffs u = forward_transform(u0).coeffs();

  const std::size_t n_rec = static_cast<std::size_t>(cfg.steps / cfg.stride);
  std::vector<Field> frames;
  frames.reserve(n_rec + 1);
  frames.push_back(inverse_transform_real(SpectralField(grid, u)));

  double t = 0.0;
  for (long step = 0; step < cfg.steps; ++step) {
    const Coeffs A1 = nonlin(t, u);
    const Coeffs A2 =
        nonlin(t + h / 2.0, applied(E, scaled_sum(u, 1.0, A1, h / 2.0)));
    Coeffs Eu = applied(E, u);
    const Coeffs A3 = nonlin(t + h / 2.0, scaled_sum(Eu, 1.0, A2, h / 2.0));
    Coeffs E2u = applied(E2, u);
    const Coeffs A4 =
        nonlin(t + h, scaled_sum(E2u, 1.0, applied(E, A3), h));

    Coeffs incr = applied(E2, A1);
    axpy(incr, 2.0, applied(E, A2));
    axpy(incr, 2.0, applied(E, A3));
    axpy(incr, 1.0, A4);
    Coeffs next = std::move(E2u);
    axpy(next, h / 6.0, incr);

    if (!finite(next) || h1_norm(grid, next) > cfg.blowup_threshold)
      throw BlowUpError(
          "time stepper left the resolvable regime (H^1 proxy exceeded or "
          "non-finite state)",
          t);

    u = std::move(next);
    t += h;
    if ((step + 1) % cfg.stride == 0)
      frames.push_back(inverse_transform_real(SpectralField(grid, u)));
  }

  double t0 = 0.0, dt_out = h * static_cast<double>(cfg.stride);
  if (h < 0.0) {
    // Backward runs are re-indexed so trajectory time still increases.
    std::reverse(frames.begin(), frames.end());
    t0 = static_cast<double>(cfg.steps) * h;
    dt_out = -dt_out;
  }
  Trajectory traj(t0, dt_out, std::move(frames));

  ConservationReport cons;
  {
    const auto mass_of = [&](const Field& f) {
      return grid.period() * mean_value(f).real();
    };
    const auto l2sq_of = [&](const Field& f) {
      const double v = l2_norm(f);
      return v * v;
    };
    const Field& first = h < 0.0 ? traj.frame(traj.node_count() - 1)
                                 : traj.frame(0);
    cons.mass_initial = mass_of(first);
    cons.l2_squared_initial = l2sq_of(first);
    const double mass_den =
        std::max(std::abs(cons.mass_initial),
                 std::sqrt(grid.period() * cons.l2_squared_initial));
    for (std::size_t m = 0; m < traj.node_count(); ++m) {
      const double dm = std::abs(mass_of(traj.frame(m)) - cons.mass_initial);
      const double dl =
          std::abs(l2sq_of(traj.frame(m)) - cons.l2_squared_initial);
      if (mass_den > 0.0)
        cons.mass_drift = std::max(cons.mass_drift, dm / mass_den);
      if (cons.l2_squared_initial > 0.0)
        cons.l2_drift =
            std::max(cons.l2_drift, dl / cons.l2_squared_initial);
    }
  }

  return SolveResult{std::move(traj), cons, std::move(warnings)};
}

}  // namespace

SolveResult solve_gbo(const Field& u0, const SolverConfig& cfg) {
  validate_config(cfg);
  if (!u0.is_real())
    throw StructuralError("solve_gbo requires real-tagged data");

  const SpectralGrid& grid = u0.grid();
  const MultiplierSymbol ddx = derivative_symbol(grid);

  std::vector<std::string> warnings;
  {
    const double guard =
        0.5 / (grid.max_wavenumber() *
               std::max(std::pow(linf_norm(u0), cfg.k), 1e-300));
    if (std::abs(cfg.dt) > guard)
      warnings.push_back(
          "dt exceeds the transport guard 0.5/(max|xi| * max|u0|^k); "
          "nonlinear phase may be under-resolved");
  }

  auto nonlin = [&](double, const Coeffs& c) -> Coeffs {
    if (cfg.disable_nonlinearity) return Coeffs(c.size());
    const SpectralField cu(grid, c);
    SpectralField out = SpectralField::zeros(grid);
    if (cfg.form == NonlinearForm::TransportPower) {
      SpectralField du = apply_multiplier(ddx, cu);
      out = dealiased_pow_times(cu, cfg.k, du, DealiasMode::Exact, true);
      // u^k u_x is a perfect derivative, so it is mean-free and carries no
      // unpaired Nyquist mode; the product projection restores both once the
      // state itself holds Nyquist content, so they are removed explicitly.
      // This also makes the transport and flux forms agree to roundoff.
      out.coeffs()[0] = 0.0;
      out.coeffs()[grid.nyquist_slot()] = 0.0;
      for (auto& z : out.coeffs()) z *= -cfg.sign;
    } else {
      SpectralField flux =
          dealiased_pow_times(cu, cfg.k, cu, DealiasMode::Exact, true);
      out = apply_multiplier(ddx, flux);
      const double fac = -cfg.sign / static_cast<double>(cfg.k + 1);
      for (auto& z : out.coeffs()) z *= fac;
    }
    return std::move(out.coeffs());
  };

  return run_if_rk4(u0, cfg, nonlin, std::move(warnings));
}

SolveResult solve_linearized(const Field& u0_data, const Field& phi,
                             const std::optional<Trajectory>& forcing,
                             const SolverConfig& cfg,
                             const BlockRange& range) {
  validate_config(cfg);
  if (!u0_data.is_real() || !phi.is_real())
    throw StructuralError("solve_linearized requires real-tagged fields");
  require_same_grid(u0_data.grid(), phi.grid(), "solve_linearized");
  if (forcing) {
    require_same_grid(forcing->grid(), phi.grid(), "solve_linearized");
    if (forcing->t0() != 0.0)
      throw StructuralError("solve_linearized forcing must start at t = 0");
  }

  const SpectralGrid& grid = phi.grid();
  const SpectralField c0 = forward_transform(u0_data);

  auto forcing_at = [&](double t) -> Field {
    const double pos = (t - forcing->t0()) / forcing->dt();
    const double clamped = std::clamp(
        pos, 0.0, static_cast<double>(forcing->node_count() - 1));
    const std::size_t lo = static_cast<std::size_t>(
        std::min(clamped, static_cast<double>(forcing->node_count() - 2)));
    const double frac = clamped - static_cast<double>(lo);
    return (1.0 - frac) * forcing->frame(lo) +
           frac * forcing->frame(lo + 1);
  };

  auto nonlin = [&](double t, const Coeffs& c) -> Coeffs {
    const Field uL =
        inverse_transform_real(free_propagate(t, c0));
    const Field u = inverse_transform_real(SpectralField(grid, c), 1e-9);
    Field rhs = -1.0 * paraproduct(uL, u, cfg.k, range);
    if (forcing) rhs = rhs + forcing_at(t);
    return forward_transform(rhs).coeffs();
  };

  return run_if_rk4(phi, cfg, nonlin, {});
}

Trajectory duhamel(const Trajectory& f, Dispersion kind) {
  if (f.node_count() < 3)
    throw StructuralError("duhamel requires at least 3 time nodes");
  if (std::abs(f.t0()) > 1e-12 * std::max(1.0, f.dt()))
    throw StructuralError("duhamel requires the trajectory to start at t=0");

  const SpectralGrid& grid = f.grid();
  const double dt = f.dt();
  const std::size_t M = f.node_count() - 1;
  bool real_out = kind == Dispersion::BenjaminOno;
  std::vector<SpectralField> fhat;
  fhat.reserve(M + 1);
  for (std::size_t m = 0; m <= M; ++m) {
    real_out = real_out && f.frame(m).is_real();
    fhat.push_back(forward_transform(f.frame(m)));
  }

  // Prefix form of the trapezoid: with g_l = V(-t_l) f_l,
  //   I_m = V(t_m) [ dt/2 g_0 + dt sum_{0<l<m} g_l ] + dt/2 f_m.
  std::vector<Field> out;
  out.reserve(M + 1);
  out.push_back(Field::zeros(grid, real_out ? Parity::Real
                                            : Parity::Complex));
  Coeffs S(grid.size());
  for (std::size_t m = 1; m <= M; ++m) {
    const double w = (m == 1) ? dt / 2.0 : dt;
    const SpectralField g =
        free_propagate(-f.time(m - 1), fhat[m - 1], kind);
    axpy(S, w, g.coeffs());
    SpectralField acc = free_propagate(f.time(m), SpectralField(grid, S),
                                       kind);
    axpy(acc.coeffs(), dt / 2.0, fhat[m].coeffs());
    out.push_back(real_out ? inverse_transform_real(acc, 1e-9)
                           : inverse_transform(acc));
  }
  return Trajectory(0.0, dt, std::move(out));
}

Trajectory free_trajectory(const Field& phi, double t0, double dt,
                           std::size_t node_count, Dispersion kind) {
  if (node_count < 1)
    throw StructuralError("free_trajectory requires at least one node");
  const SpectralField c = forward_transform(phi);
  std::vector<Field> frames;
  frames.reserve(node_count);
  const bool real_out =
      phi.is_real() && kind == Dispersion::BenjaminOno;
  for (std::size_t m = 0; m < node_count; ++m) {
    const double t = t0 + static_cast<double>(m) * dt;
    SpectralField cm = free_propagate(t, c, kind);
    frames.push_back(real_out ? inverse_transform_real(cm)
                              : inverse_transform(cm));
  }
  return Trajectory(t0, dt, std::move(frames));
}

}  // namespace gbo
