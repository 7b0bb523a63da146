#pragma once

#include <span>

#include "gbo/field.hpp"

namespace gbo {

/// c_m = (1/n) * sum_j f(x_j) exp(-i xi_m x_j). Coefficients of the unique
/// band-limited trigonometric interpolant of the samples.
SpectralField forward_transform(const Field& f);

/// f(x_j) = sum_m c_m exp(i xi_m x_j). Result is complex-tagged.
Field inverse_transform(const SpectralField& c);

/// Same synthesis, but asserts the result is real: the relative imaginary
/// residue must not exceed `tol`, after which imaginary parts are dropped
/// and the field is real-tagged.
Field inverse_transform_real(const SpectralField& c, double tol = 1e-12);

/// Orthogonal projection onto Hermitian-symmetric coefficients (the exact
/// invariant subspace of real-valued synthesis). Pairs slots of opposite
/// modes; the mean and Nyquist slots lose their imaginary parts.
SpectralField hermitian_project(const SpectralField& c);

/// Raw in-place power-of-two FFT on FFT-ordered data. sign=-1 is the
/// forward direction (no normalization applied), sign=+1 the inverse.
void fft_inplace(std::span<complexd> data, int sign);

}  // namespace gbo
