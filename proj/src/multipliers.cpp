#include "gbo/multipliers.hpp"

#include <algorithm>
#include <cmath>

namespace gbo {

namespace {

MultiplierSymbol make_symbol(std::string name, const SpectralGrid& grid,
                             bool real_op) {
  return MultiplierSymbol{std::move(name), grid,
                          std::vector<complexd>(grid.size()), real_op};
}

std::size_t next_pow2(std::size_t x) {
  std::size_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

// Padded grid large enough that a product of total degree `deg` is
// alias-free: N > (deg + 1) * n / 2.
std::size_t padded_size(std::size_t n, int deg) {
  return next_pow2((static_cast<std::size_t>(deg) + 1) * (n / 2) + 1);
}

// Spread coarse coefficients onto a larger grid, splitting the coarse
// Nyquist value over the +-N/2 pair of the target band.
std::vector<complexd> embed_coeffs(const SpectralGrid& grid,
                                   const std::vector<complexd>& c,
                                   std::size_t N) {
  const std::size_t n = grid.size();
  std::vector<complexd> out(N);
  for (std::size_t i = 0; i < n; ++i) {
    const long m = grid.mode(i);
    if (i == grid.nyquist_slot()) {
      const complexd half = 0.5 * c[i];
      out[(N + static_cast<std::size_t>(m + static_cast<long>(N))) % N] +=
          half;
      out[static_cast<std::size_t>(-m)] += half;
    } else {
      out[m >= 0 ? static_cast<std::size_t>(m)
                 : N - static_cast<std::size_t>(-m)] = c[i];
    }
  }
  return out;
}

// Project fine-grid coefficients back onto the coarse band, folding the
// +-n/2 pair into the coarse Nyquist slot (keeps real fields real).
std::vector<complexd> truncate_coeffs(const SpectralGrid& grid,
                                      const std::vector<complexd>& cp) {
  const std::size_t n = grid.size();
  const std::size_t N = cp.size();
  std::vector<complexd> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long m = grid.mode(i);
    if (i == grid.nyquist_slot()) {
      out[i] = cp[N - n / 2] + cp[n / 2];
    } else {
      out[i] = cp[m >= 0 ? static_cast<std::size_t>(m)
                         : N - static_cast<std::size_t>(-m)];
    }
  }
  return out;
}

void pointwise_ipow_times(std::vector<complexd>& base, int k, bool real_input,
                          const std::vector<complexd>* other) {
  // base <- base^k * other, computed in samples. Real inputs drop the
  // roundoff imaginary parts first so powers stay exactly real.
  for (std::size_t i = 0; i < base.size(); ++i) {
    complexd b = base[i];
    if (real_input) b.imag(0.0);
    complexd acc = 1.0;
    for (int p = 0; p < k; ++p) acc *= b;
    if (other) {
      complexd o = (*other)[i];
      if (real_input) o.imag(0.0);
      acc *= o;
    }
    base[i] = acc;
  }
}

SpectralField dealiased_core(const SpectralField& f, int k,
                             const SpectralField* g, bool real_input,
                             DealiasMode mode) {
  const SpectralGrid& grid = f.grid();
  const int deg = k + (g ? 1 : 0);
  if (mode == DealiasMode::TwoThirds) {
    std::vector<complexd> a(f.coeffs());
    fft_inplace(a, +1);
    std::vector<complexd> b;
    if (g) {
      b = g->coeffs();
      fft_inplace(b, +1);
    }
    pointwise_ipow_times(a, k, real_input, g ? &b : nullptr);
    fft_inplace(a, -1);
    const double inv_n = 1.0 / static_cast<double>(a.size());
    const double cutoff = static_cast<double>(grid.size()) / 3.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] *= inv_n;
      if (std::abs(static_cast<double>(grid.mode(i))) > cutoff) a[i] = 0.0;
    }
    return SpectralField(grid, std::move(a));
  }

  const std::size_t N = padded_size(grid.size(), deg);
  std::vector<complexd> a = embed_coeffs(grid, f.coeffs(), N);
  fft_inplace(a, +1);
  std::vector<complexd> b;
  if (g) {
    b = embed_coeffs(grid, g->coeffs(), N);
    fft_inplace(b, +1);
  }
  pointwise_ipow_times(a, k, real_input, g ? &b : nullptr);
  fft_inplace(a, -1);
  const double inv_N = 1.0 / static_cast<double>(N);
  for (auto& v : a) v *= inv_N;
  return SpectralField(grid, truncate_coeffs(grid, a));
}

}  // namespace

MultiplierSymbol hilbert_symbol(const SpectralGrid& grid) {
  MultiplierSymbol s = make_symbol("hilbert", grid, true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == grid.nyquist_slot()) continue;
    const long m = grid.mode(i);
    if (m > 0) s.values[i] = complexd(0.0, -1.0);
    if (m < 0) s.values[i] = complexd(0.0, 1.0);
  }
  return s;
}

MultiplierSymbol projection_pos_symbol(const SpectralGrid& grid) {
  MultiplierSymbol s = make_symbol("project_pos", grid, false);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.mode(i) > 0) s.values[i] = 1.0;
  return s;
}

MultiplierSymbol projection_neg_symbol(const SpectralGrid& grid) {
  MultiplierSymbol s = make_symbol("project_neg", grid, false);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.mode(i) < 0 && i != grid.nyquist_slot()) s.values[i] = 1.0;
  return s;
}

MultiplierSymbol derivative_symbol(const SpectralGrid& grid) {
  MultiplierSymbol s = make_symbol("derivative", grid, true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == grid.nyquist_slot()) continue;
    s.values[i] = complexd(0.0, grid.wavenumber(i));
  }
  return s;
}

MultiplierSymbol frac_derivative_symbol(const SpectralGrid& grid,
                                        double alpha) {
  MultiplierSymbol s =
      make_symbol("frac_derivative(" + std::to_string(alpha) + ")", grid,
                  true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double axi = std::abs(grid.wavenumber(i));
    if (i == 0)
      s.values[i] = (alpha == 0.0) ? 1.0 : 0.0;
    else
      s.values[i] = std::pow(axi, alpha);
  }
  return s;
}

MultiplierSymbol propagator_symbol(const SpectralGrid& grid, double t,
                                   Dispersion kind) {
  const bool bo = (kind == Dispersion::BenjaminOno);
  MultiplierSymbol s =
      make_symbol(bo ? "free_propagate" : "schrodinger_propagate", grid,
                  bo || t == 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (bo && i == grid.nyquist_slot()) {
      s.values[i] = 1.0;
      continue;
    }
    const double xi = grid.wavenumber(i);
    const double phase = bo ? -xi * std::abs(xi) * t : -xi * xi * t;
    s.values[i] = std::polar(1.0, phase);
  }
  return s;
}

SpectralField apply_multiplier(const MultiplierSymbol& m,
                               const SpectralField& c) {
  require_same_grid(m.grid, c.grid(), "apply_multiplier");
  std::vector<complexd> out(c.coeffs());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= m.values[i];
  return SpectralField(c.grid(), std::move(out));
}

Field apply_multiplier(const MultiplierSymbol& m, const Field& f) {
  SpectralField c = apply_multiplier(m, forward_transform(f));
  if (f.is_real() && m.real_operator) return inverse_transform_real(c);
  return inverse_transform(c);
}

Field hilbert(const Field& f) {
  return apply_multiplier(hilbert_symbol(f.grid()), f);
}
Field project_pos(const Field& f) {
  return apply_multiplier(projection_pos_symbol(f.grid()), f);
}
Field project_neg(const Field& f) {
  return apply_multiplier(projection_neg_symbol(f.grid()), f);
}
Field derivative(const Field& f) {
  return apply_multiplier(derivative_symbol(f.grid()), f);
}

Field frac_derivative(const Field& f, double alpha) {
  SpectralField c = forward_transform(f);
  if (alpha < 0.0 && !effectively_zero_mean(c))
    throw DomainError(
        "negative-order |D|^alpha requires a zero-mean field (the symbol is "
        "singular at xi = 0)");
  SpectralField out = apply_multiplier(frac_derivative_symbol(f.grid(), alpha), c);
  if (f.is_real()) return inverse_transform_real(out);
  return inverse_transform(out);
}

Field free_propagate(double t, const Field& f, Dispersion kind) {
  return apply_multiplier(propagator_symbol(f.grid(), t, kind), f);
}

SpectralField free_propagate(double t, const SpectralField& c,
                             Dispersion kind) {
  return apply_multiplier(propagator_symbol(c.grid(), t, kind), c);
}

bool effectively_zero_mean(const SpectralField& c) {
  double max_abs = 0.0;
  for (const auto& v : c.coeffs()) max_abs = std::max(max_abs, std::abs(v));
  return std::abs(c[0]) <= 1e-10 * std::max(max_abs, 1e-300);
}

bool effectively_zero_mean(const Field& f) {
  return effectively_zero_mean(forward_transform(f));
}

Field dealiased_power(const Field& f, int d, DealiasMode mode) {
  if (d < 1) throw DomainError("dealiased_power requires exponent >= 1");
  if (d == 1) return f;
  SpectralField c =
      dealiased_core(forward_transform(f), d, nullptr, f.is_real(), mode);
  if (f.is_real()) return inverse_transform_real(c);
  return inverse_transform(c);
}

Field dealiased_pow_times(const Field& f, int k, const Field& g,
                          DealiasMode mode) {
  require_same_grid(f.grid(), g.grid(), "dealiased_pow_times");
  if (k < 0) throw DomainError("dealiased_pow_times requires exponent >= 0");
  const bool real_in = f.is_real() && g.is_real();
  SpectralField cg = forward_transform(g);
  SpectralField c =
      dealiased_core(forward_transform(f), k, &cg, real_in, mode);
  if (real_in) return inverse_transform_real(c);
  return inverse_transform(c);
}

SpectralField dealiased_pow_times(const SpectralField& f, int k,
                                  const SpectralField& g, DealiasMode mode,
                                  bool real_samples) {
  require_same_grid(f.grid(), g.grid(), "dealiased_pow_times");
  if (k < 0) throw DomainError("dealiased_pow_times requires exponent >= 0");
  return dealiased_core(f, k, &g, real_samples, mode);
}

}  // namespace gbo
