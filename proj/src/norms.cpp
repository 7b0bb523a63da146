#include "gbo/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbo/fft.hpp"
#include "gbo/littlewood_paley.hpp"
#include "gbo/multipliers.hpp"

namespace gbo {

namespace {

void check_exponent(double p, const char* name) {
  if (std::isnan(p) || p < 1.0)
    throw DomainError(std::string("norm exponent ") + name +
                      " must lie in [1, inf]");
}

void check_nodes(const Trajectory& u) {
  if (u.node_count() < 2)
    throw StructuralError("mixed norms need at least 2 time nodes");
}

// Trapezoid weights for the uniform node set.
std::vector<double> time_weights(std::size_t nodes, double dt) {
  std::vector<double> w(nodes, dt);
  w.front() = 0.5 * dt;
  w.back() = 0.5 * dt;
  return w;
}

// Modulus matrix access: rows[m][i] = |u(t_m, x_i)|.
using AbsRows = std::vector<std::vector<double>>;

AbsRows abs_rows_of(const Trajectory& u) {
  AbsRows rows(u.node_count());
  for (std::size_t m = 0; m < u.node_count(); ++m) {
    const auto& vals = u.frame(m).values();
    rows[m].resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      rows[m][i] = std::abs(vals[i]);
  }
  return rows;
}

double reduce_xt(const AbsRows& rows, double dx, double dt, double p,
                 double q) {
  const std::size_t nodes = rows.size();
  const std::size_t n = rows.front().size();
  const auto w = time_weights(nodes, dt);
  const bool pinf = std::isinf(p), qinf = std::isinf(q);

  double outer = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double inner;
    if (qinf) {
      inner = 0.0;
      for (std::size_t m = 0; m < nodes; ++m)
        inner = std::max(inner, rows[m][i]);
    } else {
      double s = 0.0;
      for (std::size_t m = 0; m < nodes; ++m)
        s += w[m] * std::pow(rows[m][i], q);
      inner = std::pow(s, 1.0 / q);
    }
    if (pinf)
      outer = std::max(outer, inner);
    else
      outer += dx * std::pow(inner, p);
  }
  return pinf ? outer : std::pow(outer, 1.0 / p);
}

double reduce_tx(const AbsRows& rows, double dx, double dt, double q,
                 double p) {
  const std::size_t nodes = rows.size();
  const std::size_t n = rows.front().size();
  const auto w = time_weights(nodes, dt);
  const bool pinf = std::isinf(p), qinf = std::isinf(q);

  double outer = 0.0;
  for (std::size_t m = 0; m < nodes; ++m) {
    double inner;
    if (pinf) {
      inner = 0.0;
      for (std::size_t i = 0; i < n; ++i) inner = std::max(inner, rows[m][i]);
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += dx * std::pow(rows[m][i], p);
      inner = std::pow(s, 1.0 / p);
    }
    if (qinf)
      outer = std::max(outer, inner);
    else
      outer += w[m] * std::pow(inner, q);
  }
  return qinf ? outer : std::pow(outer, 1.0 / q);
}

}  // namespace

double mixed_norm_xt(const Trajectory& u, double p, double q) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  check_nodes(u);
  return reduce_xt(abs_rows_of(u), u.grid().dx(), u.dt(), p, q);
}

double mixed_norm_tx(const Trajectory& u, double q, double p) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  check_nodes(u);
  return reduce_tx(abs_rows_of(u), u.grid().dx(), u.dt(), q, p);
}

double sobolev_norm(const Field& phi, double s, bool homogeneous) {
  const SpectralField c = forward_transform(phi);
  const SpectralGrid& grid = phi.grid();
  if (homogeneous && s < 0.0 && !effectively_zero_mean(c))
    throw DomainError(
        "homogeneous Sobolev norm with s < 0 requires a zero-mean field");
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double xi = grid.wavenumber(i);
    double wgt;
    if (homogeneous) {
      if (i == 0)
        wgt = (s == 0.0) ? 1.0 : 0.0;
      else
        wgt = std::pow(std::abs(xi), 2.0 * s);
    } else {
      wgt = std::pow(1.0 + xi * xi, s);
    }
    sum += wgt * std::norm(c[i]);
  }
  return std::sqrt(grid.period() * sum);
}

double besov_norm(const Trajectory& u, double s, double r, double p,
                  double q) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  check_exponent(r, "r");
  check_nodes(u);

  const SpectralGrid& grid = u.grid();
  std::vector<SpectralField> spectra;
  spectra.reserve(u.node_count());
  for (std::size_t m = 0; m < u.node_count(); ++m) {
    spectra.push_back(forward_transform(u.frame(m)));
    if (!effectively_zero_mean(spectra.back()))
      throw DomainError(
          "Besov norm on the homogeneous scale requires zero-mean frames");
  }

  const BlockRange range = BlockRange::for_grid(grid);
  const bool rinf = std::isinf(r);
  AbsRows rows(u.node_count());
  double acc = 0.0;
  for (int j = range.jmin; j <= range.jmax; ++j) {
    for (std::size_t m = 0; m < u.node_count(); ++m) {
      std::vector<complexd> tmp = block(j, spectra[m]).coeffs();
      fft_inplace(tmp, +1);
      rows[m].resize(tmp.size());
      for (std::size_t i = 0; i < tmp.size(); ++i)
        rows[m][i] = std::abs(tmp[i]);
    }
    const double term =
        std::exp2(static_cast<double>(j) * s) *
        reduce_xt(rows, grid.dx(), u.dt(), p, q);
    if (rinf)
      acc = std::max(acc, term);
    else
      acc += std::pow(term, r);
  }
  return rinf ? acc : std::pow(acc, 1.0 / r);
}

BesovIndices s_space_indices(double s, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw DomainError("solution-space parameter theta must lie in [0, 1]");
  const double inf = std::numeric_limits<double>::infinity();
  return BesovIndices{s + (3.0 * theta - 1.0) / 4.0, 2.0,
                      theta == 1.0 ? inf : 4.0 / (1.0 - theta),
                      theta == 0.0 ? inf : 2.0 / theta};
}

BesovIndices n_space_indices(double s, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw DomainError("nonlinear-space parameter theta must lie in [0, 1]");
  return BesovIndices{s + (1.0 - 3.0 * theta) / 4.0, 2.0,
                      4.0 / (3.0 + theta), 2.0 / (2.0 - theta)};
}

double s_space_norm(const Trajectory& u, double s, double theta) {
  const BesovIndices ix = s_space_indices(s, theta);
  return besov_norm(u, ix.s, ix.r, ix.p, ix.q);
}

double n_space_norm(const Trajectory& u, double s, double theta) {
  const BesovIndices ix = n_space_indices(s, theta);
  return besov_norm(u, ix.s, ix.r, ix.p, ix.q);
}

double x_norm(const Trajectory& u, double s, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw DomainError("x_norm requires eps in (0, 1)");
  return s_space_norm(u, s, eps) + s_space_norm(u, s, 1.0);
}

double y_norm(const Trajectory& u, int k, double eps) {
  if (k < 3) throw DomainError("y_norm requires k >= 3");
  const double sk = 0.5 - 1.0 / static_cast<double>(k);
  const double inf = std::numeric_limits<double>::infinity();
  return x_norm(u, sk, eps) +
         mixed_norm_xt(u, static_cast<double>(k), inf);
}

double x_norm_k3(const Trajectory& u, double s, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw DomainError("x_norm_k3 requires eps in (0, 1)");
  return x_norm(u, 0.0, eps) + x_norm(u, s, eps) +
         besov_norm(u, eps, 2.0, 3.0, 2.0 / eps);
}

bool is_admissible(const AdmissibleTriple& t) {
  const double tol = 1e-12;
  if (std::abs(t.alpha - 0.5) <= tol && std::isinf(t.p) &&
      std::abs(t.q - 2.0) <= tol)
    return true;
  if (!(t.p >= 4.0) || std::isinf(t.p)) return false;
  if (!(t.q > 2.0)) return false;
  const double invq = std::isinf(t.q) ? 0.0 : 1.0 / t.q;
  if (2.0 / t.p + invq > 0.5 + tol) return false;
  return std::abs(t.alpha - (1.0 / t.p + 2.0 * invq - 0.5)) <= tol;
}

NormKind norm_kind_from_string(const std::string& name) {
  if (name == "mixed_xt") return NormKind::MixedXT;
  if (name == "mixed_tx") return NormKind::MixedTX;
  if (name == "sobolev_hom") return NormKind::SobolevHom;
  if (name == "sobolev_inhom") return NormKind::SobolevInhom;
  if (name == "besov") return NormKind::Besov;
  if (name == "S_space") return NormKind::SSpace;
  if (name == "N_space") return NormKind::NSpace;
  if (name == "X_space") return NormKind::XSpace;
  if (name == "Y_norm") return NormKind::YNorm;
  if (name == "X_space_k3") return NormKind::XSpaceK3;
  throw DomainError("unknown norm spec '" + name + "'");
}

std::string norm_kind_to_string(NormKind kind) {
  switch (kind) {
    case NormKind::MixedXT: return "mixed_xt";
    case NormKind::MixedTX: return "mixed_tx";
    case NormKind::SobolevHom: return "sobolev_hom";
    case NormKind::SobolevInhom: return "sobolev_inhom";
    case NormKind::Besov: return "besov";
    case NormKind::SSpace: return "S_space";
    case NormKind::NSpace: return "N_space";
    case NormKind::XSpace: return "X_space";
    case NormKind::YNorm: return "Y_norm";
    case NormKind::XSpaceK3: return "X_space_k3";
  }
  throw StructuralError("unhandled norm kind");
}

double evaluate_norm(const NormSpec& spec, const Trajectory& u) {
  switch (spec.kind) {
    case NormKind::MixedXT:
      return mixed_norm_xt(u, spec.p, spec.q);
    case NormKind::MixedTX:
      return mixed_norm_tx(u, spec.q, spec.p);
    case NormKind::SobolevHom:
    case NormKind::SobolevInhom: {
      double v = 0.0;
      for (const auto& f : u.frames())
        v = std::max(
            v, sobolev_norm(f, spec.s, spec.kind == NormKind::SobolevHom));
      return v;
    }
    case NormKind::Besov:
      return besov_norm(u, spec.s, spec.r, spec.p, spec.q);
    case NormKind::SSpace:
      return s_space_norm(u, spec.s, spec.theta);
    case NormKind::NSpace:
      return n_space_norm(u, spec.s, spec.theta);
    case NormKind::XSpace:
      return x_norm(u, spec.s, spec.eps);
    case NormKind::YNorm:
      return y_norm(u, spec.k, spec.eps);
    case NormKind::XSpaceK3:
      return x_norm_k3(u, spec.s, spec.eps);
  }
  throw StructuralError("unhandled norm kind");
}

}  // namespace gbo
