#pragma once

#include <limits>
#include <string>

#include "gbo/trajectory.hpp"

namespace gbo {

/// Exponent value selecting the sup norm.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ||u||_{L^p_x L^q_T}: trapezoid rule in time (max over nodes when q is
/// infinite) at each spatial sample, then a Riemann sum with weight dx in
/// space (max when p is infinite).
double mixed_norm_xt(const Trajectory& u, double p, double q);

/// ||u||_{L^q_T L^p_x}: spatial norm per node, then the time norm.
double mixed_norm_tx(const Trajectory& u, double q, double p);

/// Sobolev norm of a snapshot. Homogeneous: (L * sum |xi|^{2s} |c|^2)^{1/2}
/// with the mean mode contributing only at s = 0; s < 0 demands zero mean.
/// Inhomogeneous: weight (1 + xi^2)^s on every mode.
double sobolev_norm(const Field& phi, double s, bool homogeneous);

/// Besov norm (sum_j [2^{js} ||Q_j u||_{L^p_x L^q_T}]^r)^{1/r} over the
/// grid-resolvable blocks; r infinite takes the sup. Frames must be
/// zero-mean (homogeneous scale).
double besov_norm(const Trajectory& u, double s, double r, double p,
                  double q);

/// Derived Besov indices of the solution and nonlinear scales.
struct BesovIndices {
  double s, r, p, q;
};
/// (s + (3*theta - 1)/4, 2, 4/(1 - theta), 2/theta), theta in [0, 1].
BesovIndices s_space_indices(double s, double theta);
/// (s + (1 - 3*theta)/4, 2, 4/(3 + theta), 2/(2 - theta)).
BesovIndices n_space_indices(double s, double theta);

double s_space_norm(const Trajectory& u, double s, double theta);
double n_space_norm(const Trajectory& u, double s, double theta);

/// Sum norm of the two-exponent solution space: s_space at theta = eps
/// plus s_space at theta = 1.
double x_norm(const Trajectory& u, double s, double eps);

/// x_norm at the critical index of k, plus ||u||_{L^k_x L^infty_T}.
double y_norm(const Trajectory& u, int k, double eps);

/// Cubic-case workspace: x_norm at 0 and at s, plus the auxiliary Besov
/// piece with indices (eps, 2, 3, 2/eps).
double x_norm_k3(const Trajectory& u, double s, double eps);

struct AdmissibleTriple {
  double alpha, p, q;
};

/// True when (alpha, p, q) = (1/2, inf, 2) or when 4 <= p < inf,
/// 2 < q <= inf, 2/p + 1/q <= 1/2 and alpha = 1/p + 2/q - 1/2 (equalities
/// checked to 1e-12).
bool is_admissible(const AdmissibleTriple& t);

enum class NormKind {
  MixedXT,
  MixedTX,
  SobolevHom,
  SobolevInhom,
  Besov,
  SSpace,
  NSpace,
  XSpace,
  YNorm,
  XSpaceK3
};

NormKind norm_kind_from_string(const std::string& name);
std::string norm_kind_to_string(NormKind kind);

/// Parameter bundle for the CLI-facing evaluator. Unused members are
/// ignored by each kind.
struct NormSpec {
  NormKind kind = NormKind::MixedXT;
  double s = 0.0;
  double theta = 1.0;
  double eps = 0.125;
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;
  int k = 4;
};

/// Dispatch on kind. Sobolev kinds evaluate the max over frames.
double evaluate_norm(const NormSpec& spec, const Trajectory& u);

}  // namespace gbo
