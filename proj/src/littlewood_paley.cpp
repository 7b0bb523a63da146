#include "gbo/littlewood_paley.hpp"

#include <cmath>

namespace gbo {

namespace {

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// eta(2^{-j} |xi|) with the scaling done exactly in the exponent.
double bump_at(double abs_xi, int j) {
  return dyadic_bump(std::ldexp(abs_xi, -j));
}

// sum_{r <= j} eta(2^{-r} |xi|), telescoped to a single smooth step.
double lowcut_at(double abs_xi, int j) {
  return smooth_step(std::ldexp(abs_xi, -j));
}

template <typename WeightFn>
SpectralField masked(const SpectralField& c, WeightFn&& w) {
  std::vector<complexd> out(c.coeffs());
  const SpectralGrid& grid = c.grid();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= w(std::abs(grid.wavenumber(i)), i == 0);
  return SpectralField(grid, std::move(out));
}

Field to_field_like(const SpectralField& c, const Field& like) {
  // Real even windows preserve realness analytically; projecting first
  // removes the non-Hermitian transform noise so the realness guard stays
  // meaningful even when the filtered band sits near the noise floor.
  if (like.is_real()) return inverse_transform_real(hermitian_project(c));
  return inverse_transform(c);
}

void require_real(const Field& f, const char* what) {
  if (!f.is_real())
    throw StructuralError(std::string(what) + ": requires real-tagged fields");
}

// Shared core of paraproduct and nonlinear_remainder: the j-th transport
// block d/dx Q_j((Q_{<<j} f)^k * Q_{~j} g) as coefficients.
SpectralField transport_block(int j, const SpectralField& cf,
                              const SpectralField& cg, int k,
                              const BlockRange& range,
                              const MultiplierSymbol& ddx) {
  SpectralField low =
      masked(cf, [&](double axi, bool is_mean) {
        return is_mean ? 0.0 : lowcut_at(axi, j - range.J - 1);
      });
  SpectralField sim = masked(cg, [&](double axi, bool is_mean) {
    return is_mean ? 0.0
                   : lowcut_at(axi, j + range.Jsim) -
                         lowcut_at(axi, j - range.Jsim - 1);
  });
  SpectralField prod =
      dealiased_pow_times(low, k, sim, DealiasMode::Exact, true);
  SpectralField blocked = block(j, prod);
  return apply_multiplier(ddx, blocked);
}

}  // namespace

double smooth_step(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = glue(2.0 - r);
  const double b = glue(r - 1.0);
  return a / (a + b);
}

double dyadic_bump(double xi) {
  const double r = std::abs(xi);
  return smooth_step(r) - smooth_step(2.0 * r);
}

BlockRange BlockRange::for_grid(const SpectralGrid& grid, int J, int Jsim) {
  if (J < 1 || Jsim < 1)
    throw StructuralError("block range offsets J, Jsim must be >= 1");
  const int jmin =
      static_cast<int>(std::floor(std::log2(grid.min_wavenumber())));
  const int jmax =
      static_cast<int>(std::ceil(std::log2(grid.max_wavenumber())));
  return BlockRange{jmin, jmax, J, Jsim};
}

SpectralField block(int j, const SpectralField& c) {
  return masked(c, [j](double axi, bool is_mean) {
    return is_mean ? 0.0 : bump_at(axi, j);
  });
}

Field block(int j, const Field& f) {
  return to_field_like(block(j, forward_transform(f)), f);
}

SpectralField block_upto(int j, const SpectralField& c) {
  return masked(c, [j](double axi, bool is_mean) {
    return is_mean ? 0.0 : lowcut_at(axi, j);
  });
}

Field block_upto(int j, const Field& f) {
  return to_field_like(block_upto(j, forward_transform(f)), f);
}

Field block_ll(int j, const Field& f, const BlockRange& range) {
  return block_upto(j - range.J - 1, f);
}

Field block_sim(int j, const Field& f, const BlockRange& range) {
  SpectralField c = forward_transform(f);
  SpectralField out = masked(c, [&](double axi, bool is_mean) {
    return is_mean ? 0.0
                   : lowcut_at(axi, j + range.Jsim) -
                         lowcut_at(axi, j - range.Jsim - 1);
  });
  return to_field_like(out, f);
}

Field block_leq(int j, const Field& f, const BlockRange& range) {
  return block_upto(j + range.Jsim, f);
}

Field lowpass(const Field& f) {
  SpectralField out = masked(forward_transform(f),
                             [](double axi, bool is_mean) {
                               return is_mean ? 1.0
                                              : smooth_step(8.0 * axi);
                             });
  return to_field_like(out, f);
}

Field paraproduct(const Field& f, const Field& g, int k,
                  const BlockRange& range) {
  require_real(f, "paraproduct");
  require_real(g, "paraproduct");
  require_same_grid(f.grid(), g.grid(), "paraproduct");
  if (k < 3) throw DomainError("paraproduct requires power k >= 3");

  const SpectralField cf = forward_transform(f);
  const SpectralField cg = forward_transform(g);
  const MultiplierSymbol ddx = derivative_symbol(f.grid());
  SpectralField acc = SpectralField::zeros(f.grid());
  for (int j = range.jmin; j <= range.jmax; ++j) {
    SpectralField term = transport_block(j, cf, cg, k, range, ddx);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
  }
  return inverse_transform_real(hermitian_project(acc));
}

Field nonlinear_remainder(const Field& u, int k, const BlockRange& range) {
  require_real(u, "nonlinear_remainder");
  if (k < 3)
    throw DomainError("nonlinear_remainder requires power k >= 3");

  const SpectralField cu = forward_transform(u);
  const SpectralField cflux = forward_transform(dealiased_power(u, k + 1));
  const MultiplierSymbol ddx = derivative_symbol(u.grid());
  SpectralField acc = SpectralField::zeros(u.grid());
  for (int j = range.jmin; j <= range.jmax; ++j) {
    SpectralField para = transport_block(j, cu, cu, k, range, ddx);
    SpectralField flux = apply_multiplier(ddx, block(j, cflux));
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc[i] += para[i] - flux[i];
  }
  return inverse_transform_real(hermitian_project(acc));
}

}  // namespace gbo
