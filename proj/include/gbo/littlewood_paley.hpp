#pragma once

#include "gbo/multipliers.hpp"

namespace gbo {

/// C-infinity step: 1 for r <= 1, 0 for r >= 2, strictly monotone between.
/// Built from the standard exp(-1/x) glue.
double smooth_step(double r);

/// Dyadic bump eta(xi) = smooth_step(|xi|) - smooth_step(2|xi|): supported
/// in 1/2 <= |xi| <= 2 with eta(1) = 1 and sum_j eta(2^{-j} xi) = 1 for
/// every xi != 0 (the sum telescopes).
double dyadic_bump(double xi);

/// Dyadic block bookkeeping for one grid. Blocks Q_j with weight
/// eta(2^{-j} xi) are nonzero only for j in [jmin, jmax]; J and Jsim fix
/// the "much lower than" and "comparable to" windows.
struct BlockRange {
  int jmin;
  int jmax;
  int J;
  int Jsim;

  static BlockRange for_grid(const SpectralGrid& grid, int J = 3,
                             int Jsim = 2);
};

/// Q_j f: multiplier eta(2^{-j} xi).
Field block(int j, const Field& f);
SpectralField block(int j, const SpectralField& c);

/// sum_{r <= j} Q_r f. Telescopes to the smooth low-pass
/// smooth_step(2^{-j}|xi|) on every nonzero mode; the mean is excluded.
Field block_upto(int j, const Field& f);
SpectralField block_upto(int j, const SpectralField& c);

/// Q_{<< j} = sum_{r < j - J} Q_r.
Field block_ll(int j, const Field& f, const BlockRange& range);
/// sum_{|r - j| <= Jsim} Q_r.
Field block_sim(int j, const Field& f, const BlockRange& range);
/// Q_{<~ j} = sum_{r <= j + Jsim} Q_r.
Field block_leq(int j, const Field& f, const BlockRange& range);

/// Smooth low-frequency cutoff sum_{j <= -3} Q_j plus the mean.
Field lowpass(const Field& f);

/// Paradifferential transport form pi(f, g) =
///   sum_j d/dx Q_j( (Q_{<< j} f)^k * Q_{~ j} g ),
/// with every product exactly dealiased. Inputs must be real-tagged.
Field paraproduct(const Field& f, const Field& g, int k,
                  const BlockRange& range);

/// Exact residual between the transport paraproduct of u with itself and
/// the full flux derivative: sum_j [ d/dx Q_j((Q_{<< j}u)^k Q_{~ j}u)
/// - d/dx Q_j(u^{k+1}) ]. By construction
/// paraproduct(u,u,k) - nonlinear_remainder(u,k) = d/dx(u^{k+1}).
Field nonlinear_remainder(const Field& u, int k, const BlockRange& range);

}  // namespace gbo
