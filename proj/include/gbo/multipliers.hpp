#pragma once

#include <string>

#include "gbo/fft.hpp"
#include "gbo/field.hpp"

namespace gbo {

/// Diagonal Fourier operator: slot-wise factors tabulated for one grid.
/// `real_operator` marks symbols m with m(-xi) = conj(m(xi)) and real values
/// at the mean and Nyquist slots; such operators preserve realness.
struct MultiplierSymbol {
  std::string name;
  SpectralGrid grid;
  std::vector<complexd> values;
  bool real_operator;
};

/// Hilbert transform, -i * sgn(xi). sgn(0) = 0; the Nyquist slot is zeroed
/// so the operator stays real on the unpaired mode.
MultiplierSymbol hilbert_symbol(const SpectralGrid& grid);

/// Frequency half-line projections: project_pos keeps xi > 0, project_neg
/// keeps xi < 0. Mean and Nyquist slots map to zero, so that
/// i*H = project_pos - project_neg holds slot for slot.
MultiplierSymbol projection_pos_symbol(const SpectralGrid& grid);
MultiplierSymbol projection_neg_symbol(const SpectralGrid& grid);

/// d/dx, i.e. i*xi, with the Nyquist slot zeroed (odd symbol convention).
MultiplierSymbol derivative_symbol(const SpectralGrid& grid);

/// |D|^alpha = |xi|^alpha. The mean slot gets 0 for alpha > 0, 1 for
/// alpha = 0; for alpha < 0 the operator is only defined on zero-mean
/// fields (enforced in frac_derivative).
MultiplierSymbol frac_derivative_symbol(const SpectralGrid& grid,
                                        double alpha);

enum class Dispersion {
  BenjaminOno,  // symbol exp(-i xi |xi| t); real-preserving group
  Schrodinger   // symbol exp(-i xi^2 t); complex-valued for t != 0
};

/// Free evolution group at time t. The Benjamin-Ono symbol is frozen to 1
/// on the unpaired Nyquist slot, which keeps the group real, unitary and
/// consistent with V(0) = Id.
MultiplierSymbol propagator_symbol(const SpectralGrid& grid, double t,
                                   Dispersion kind = Dispersion::BenjaminOno);

/// Apply a tabulated symbol in coefficient space.
SpectralField apply_multiplier(const MultiplierSymbol& m,
                               const SpectralField& c);

/// Transform, multiply, transform back. A real-tagged input under a real
/// operator yields a real-tagged output: the imaginary residue must stay
/// below 1e-12 (relative) and is then truncated. Otherwise the result is
/// complex-tagged.
Field apply_multiplier(const MultiplierSymbol& m, const Field& f);

Field hilbert(const Field& f);
Field project_pos(const Field& f);
Field project_neg(const Field& f);
Field derivative(const Field& f);

/// |D|^alpha f. For alpha < 0 the input must be effectively zero-mean,
/// otherwise a DomainError is raised.
Field frac_derivative(const Field& f, double alpha);

Field free_propagate(double t, const Field& f,
                     Dispersion kind = Dispersion::BenjaminOno);
SpectralField free_propagate(double t, const SpectralField& c,
                             Dispersion kind = Dispersion::BenjaminOno);

/// |mean coefficient| <= 1e-10 * max(|coefficients|).
bool effectively_zero_mean(const SpectralField& c);
bool effectively_zero_mean(const Field& f);

enum class DealiasMode {
  Exact,     // zero-pad to a grid that represents the full product band
  TwoThirds  // classical truncation heuristic; faster, not alias-free
};

/// Band-limited projection of f^d onto the grid, computed alias-free by
/// zero padding (mode Exact). The Nyquist pair of the padded grid is folded
/// symmetrically, preserving realness.
Field dealiased_power(const Field& f, int d,
                      DealiasMode mode = DealiasMode::Exact);

/// Band-limited projection of f^k * g, alias-free for mode Exact.
Field dealiased_pow_times(const Field& f, int k, const Field& g,
                          DealiasMode mode = DealiasMode::Exact);

/// Coefficient-space variant. `real_samples` drops roundoff imaginary
/// parts of the synthesized samples before multiplying; set it when the
/// coefficients are known to describe real fields.
SpectralField dealiased_pow_times(const SpectralField& f, int k,
                                  const SpectralField& g,
                                  DealiasMode mode = DealiasMode::Exact,
                                  bool real_samples = false);

}  // namespace gbo
