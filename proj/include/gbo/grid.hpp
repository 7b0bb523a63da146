#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "gbo/errors.hpp"

namespace gbo {

/// Equispaced periodic grid: n samples x_i = i * period / n on a torus of
/// length `period`. Fourier modes are indexed m in {-n/2, ..., n/2 - 1} with
/// wavenumber xi_m = 2*pi*m / period, stored in FFT order: array slot i holds
/// mode m = i for i < n/2 and m = i - n otherwise (slot n/2 is the Nyquist
/// mode m = -n/2).
class SpectralGrid {
 public:
  SpectralGrid(std::size_t n, double period) : n_(n), period_(period) {
    if (n < 16 || (n & (n - 1)) != 0)
      throw StructuralError("grid size must be a power of two >= 16, got " +
                            std::to_string(n));
    if (!(period > 0.0) || !std::isfinite(period))
      throw StructuralError("grid period must be positive and finite");
  }

  std::size_t size() const noexcept { return n_; }
  double period() const noexcept { return period_; }
  double dx() const noexcept { return period_ / static_cast<double>(n_); }
  double node(std::size_t i) const noexcept {
    return static_cast<double>(i) * dx();
  }

  /// Signed mode number for array slot i.
  long mode(std::size_t i) const noexcept {
    const long half = static_cast<long>(n_ / 2);
    const long li = static_cast<long>(i);
    return li < half ? li : li - static_cast<long>(n_);
  }

  /// Array slot for signed mode number m in [-n/2, n/2).
  std::size_t slot(long m) const {
    const long half = static_cast<long>(n_ / 2);
    if (m < -half || m >= half)
      throw StructuralError("mode " + std::to_string(m) +
                            " not representable on grid of size " +
                            std::to_string(n_));
    return static_cast<std::size_t>(m >= 0 ? m : m + static_cast<long>(n_));
  }

  double wavenumber(std::size_t i) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(mode(i)) / period_;
  }

  std::size_t nyquist_slot() const noexcept { return n_ / 2; }

  /// Smallest positive wavenumber 2*pi/period.
  double min_wavenumber() const noexcept {
    return 2.0 * std::numbers::pi / period_;
  }
  /// Largest represented magnitude pi*n/period (the Nyquist mode).
  double max_wavenumber() const noexcept {
    return std::numbers::pi * static_cast<double>(n_) / period_;
  }

  bool operator==(const SpectralGrid& o) const noexcept {
    return n_ == o.n_ && period_ == o.period_;
  }
  bool operator!=(const SpectralGrid& o) const noexcept {
    return !(*this == o);
  }

 private:
  std::size_t n_;
  double period_;
};

/// Default desk-scale domain: 1024 points on a torus of length 64 * 2*pi,
/// so wavenumbers run over {m/64 : |m| <= 512}.
inline constexpr std::size_t kDefaultGridSize = 1024;
inline const double kDefaultPeriod = 128.0 * std::numbers::pi;

}  // namespace gbo
