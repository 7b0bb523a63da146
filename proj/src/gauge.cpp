#include "gbo/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "gbo/fft.hpp"
#include "gbo/multipliers.hpp"

namespace gbo {

namespace {

Field phase_field(const Field& B, double meanB, double sign) {
  const SpectralGrid& grid = B.grid();
  std::vector<complexd> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double arg = B[i].real() + meanB * grid.node(i);
    v[i] = std::polar(1.0, sign * arg);
  }
  return Field(grid, std::move(v), Parity::Complex);
}

}  // namespace

GaugeData antiderivative(const Field& b) {
  if (!b.is_real())
    throw StructuralError("antiderivative requires a real-tagged field");
  const SpectralGrid& grid = b.grid();
  SpectralField c = forward_transform(b);
  const double meanB = c[0].real();
  std::vector<complexd> prim(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (i == grid.nyquist_slot()) continue;  // odd symbol: unpaired mode dropped
    prim[i] = c[i] / complexd(0.0, grid.wavenumber(i));
  }
  Field B = inverse_transform_real(SpectralField(grid, std::move(prim)));
  Field phase = phase_field(B, meanB, +1.0);
  return GaugeData{0, b, std::move(B), std::move(phase), meanB};
}

Field gauge_coefficient(const Field& u0, int j, int k,
                        const BlockRange& range) {
  if (!u0.is_real())
    throw StructuralError("gauge_coefficient requires real-tagged data");
  if (k < 3) throw DomainError("gauge_coefficient requires k >= 3");
  return 0.5 * dealiased_power(block_ll(j, u0, range), k);
}

GaugeData make_gauge(const Field& u0, int j, int k, const BlockRange& range) {
  GaugeData gd = antiderivative(gauge_coefficient(u0, j, k, range));
  gd.j = j;
  return gd;
}

Field gauge_forward(const Field& u, const Field& u0, int j, int k,
                    const BlockRange& range) {
  require_same_grid(u.grid(), u0.grid(), "gauge_forward");
  const GaugeData gd = make_gauge(u0, j, k, range);
  return pointwise_product(gd.phase, project_pos(block(j, u)));
}

Field gauge_inverse(const Field& w, const Field& u0, int j, int k,
                    const BlockRange& range) {
  require_same_grid(w.grid(), u0.grid(), "gauge_inverse");
  GaugeData gd = make_gauge(u0, j, k, range);
  Field conj_phase = phase_field(gd.B, gd.meanB, -1.0);
  return pointwise_product(conj_phase, w);
}

double conjugation_residual(const Trajectory& v, const Field& b,
                            const std::optional<Trajectory>& g) {
  if (v.node_count() < 3)
    throw StructuralError("conjugation_residual needs >= 3 time nodes");
  require_same_grid(v.grid(), b.grid(), "conjugation_residual");
  if (g && g->node_count() != v.node_count())
    throw StructuralError("conjugation_residual: forcing nodes mismatch");

  const SpectralGrid& grid = v.grid();
  const std::size_t n = grid.size();
  const GaugeData gd = antiderivative(b);
  const double inv_2dt = 1.0 / (2.0 * v.dt());
  const complexd iunit(0.0, 1.0);

  // Spectral d^2/dx^2 as a single multiplier (-xi^2, even symbol).
  MultiplierSymbol dxx = derivative_symbol(grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.wavenumber(i);
    dxx.values[i] = -xi * xi;
  }
  const MultiplierSymbol ddx = derivative_symbol(grid);

  std::vector<Field> w;
  w.reserve(v.node_count());
  for (std::size_t m = 0; m < v.node_count(); ++m)
    w.push_back(pointwise_product(gd.phase, v.frame(m)));

  const std::size_t lo = n / 4, hi = 3 * n / 4;  // interior window
  double max_diff = 0.0, scale = 0.0;
  for (std::size_t m = 1; m + 1 < v.node_count(); ++m) {
    const Field dwdt = inv_2dt * (w[m + 1] - w[m - 1]);
    const Field wxx = apply_multiplier(dxx, w[m]);
    const Field side1 = iunit * dwdt + wxx;

    Field rhs = Field::zeros(grid, Parity::Complex);
    if (g) {
      rhs = g->frame(m);
    } else {
      // (d/dx + ib)^2 v = v_xx + i (b v)_x + i b v_x - b^2 v, assembled
      // with dealiased products.
      const Field& vm = v.frame(m);
      const Field dvdt = inv_2dt * (v.frame(m + 1) - v.frame(m - 1));
      const Field vxx = apply_multiplier(dxx, vm);
      const Field bv_x =
          apply_multiplier(ddx, dealiased_pow_times(b, 1, vm));
      const Field b_vx =
          dealiased_pow_times(b, 1, apply_multiplier(ddx, vm));
      const Field bbv = dealiased_pow_times(b, 2, vm);
      rhs = iunit * dvdt + vxx + iunit * bv_x + iunit * b_vx - bbv;
    }
    const Field side2 = pointwise_product(gd.phase, rhs);

    for (std::size_t i = lo; i < hi; ++i) {
      max_diff = std::max(max_diff, std::abs(side1[i] - side2[i]));
      scale = std::max({scale, std::abs(wxx[i]), std::abs(dwdt[i])});
    }
  }
  return max_diff / std::max(scale, 1e-300);
}

std::vector<double> gauge_smallness_scan(const Field& u0, int j, int k,
                                         int Jmax) {
  if (Jmax < 1) throw StructuralError("gauge_smallness_scan needs Jmax >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(Jmax));
  for (int J = 1; J <= Jmax; ++J) {
    const Field low = block_upto(j - J - 1, u0);
    out.push_back(std::exp2(static_cast<double>(-j)) *
                  linf_norm(dealiased_power(low, k)));
  }
  return out;
}

}  // namespace gbo
