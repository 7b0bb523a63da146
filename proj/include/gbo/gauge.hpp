#pragma once

#include <optional>

#include "gbo/littlewood_paley.hpp"
#include "gbo/trajectory.hpp"

namespace gbo {

/// Antiderivative data for a gauge phase. On the torus the mean of b
/// obstructs a periodic primitive, so the full primitive splits as
/// B(x) + meanB * x: B is the periodic zero-mean part (spectral division
/// by i*xi), meanB the linear-growth rate. `phase` is the unimodular
/// factor exp(i*(B(x) + meanB*x)) evaluated on the sample points; it is
/// generally not periodic and all residual metrics stay on an interior
/// window.
struct GaugeData {
  int j = 0;
  Field b;
  Field B;
  Field phase;
  double meanB = 0.0;
};

/// Split primitive of a real-tagged coefficient field.
GaugeData antiderivative(const Field& b);

/// Transport coefficient of the localized gauge at block j:
/// b = (1/2) * (block_ll(j, u0))^k.
Field gauge_coefficient(const Field& u0, int j, int k,
                        const BlockRange& range);

/// GaugeData for the phase exp(i * primitive of gauge_coefficient).
GaugeData make_gauge(const Field& u0, int j, int k, const BlockRange& range);

/// w_j = phase * project_pos(block(j, u)). The phase neutralizes the
/// leading transport term of the positive-frequency block.
Field gauge_forward(const Field& u, const Field& u0, int j, int k,
                    const BlockRange& range);

/// Multiplication by the conjugate phase: recovers project_pos(block(j,u)).
Field gauge_inverse(const Field& w, const Field& u0, int j, int k,
                    const BlockRange& range);

/// Max relative residual of the conjugation identity
///   i d/dt(phase * v) + d^2/dx^2(phase * v) = phase * [i d/dt v + (d/dx + i b)^2 v]
/// over interior nodes and the central half of the box; d/dt by central
/// differences, d/dx spectral. When g is given it replaces the bracketed
/// right-hand side (the manufactured-solution mode). Analytically zero
/// whenever v solves i v_t + (d/dx + ib)^2 v = g.
double conjugation_residual(const Trajectory& v, const Field& b,
                            const std::optional<Trajectory>& g);

/// Lemma-style smallness hook: 2^{-j} * ||(block_upto(j - J - 1, u0))^k||_inf
/// for J = 1..Jmax, measuring how fast the low-frequency transport
/// coefficient decays as the cutoff widens.
std::vector<double> gauge_smallness_scan(const Field& u0, int j, int k,
                                         int Jmax);

}  // namespace gbo
