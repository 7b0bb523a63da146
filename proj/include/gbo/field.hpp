#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gbo/errors.hpp"
#include "gbo/grid.hpp"

namespace gbo {

using complexd = std::complex<double>;

/// Value tag for physical-space fields. Real-tagged fields store exactly
/// zero imaginary parts; operators that cannot preserve realness return
/// complex-tagged results.
enum class Parity : std::uint8_t { Real = 0, Complex = 1 };

/// A sampled function on a SpectralGrid. Values live in physical space;
/// use forward_transform/inverse_transform to move to coefficients.
class Field {
 public:
  Field(SpectralGrid grid, std::vector<complexd> values, Parity tag)
      : grid_(grid), values_(std::move(values)), tag_(tag) {
    if (values_.size() != grid_.size())
      throw StructuralError("field length does not match grid size");
    if (tag_ == Parity::Real)
      for (auto& v : values_) v.imag(0.0);
  }

  static Field zeros(const SpectralGrid& grid, Parity tag = Parity::Real) {
    return Field(grid, std::vector<complexd>(grid.size()), tag);
  }

  static Field from_real(const SpectralGrid& grid,
                         std::span<const double> samples) {
    if (samples.size() != grid.size())
      throw StructuralError("sample length does not match grid size");
    std::vector<complexd> v(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i];
    return Field(grid, std::move(v), Parity::Real);
  }

  const SpectralGrid& grid() const noexcept { return grid_; }
  Parity tag() const noexcept { return tag_; }
  bool is_real() const noexcept { return tag_ == Parity::Real; }
  std::size_t size() const noexcept { return values_.size(); }

  const std::vector<complexd>& values() const noexcept { return values_; }
  std::vector<complexd>& values() noexcept { return values_; }
  const complexd& operator[](std::size_t i) const noexcept {
    return values_[i];
  }
  complexd& operator[](std::size_t i) noexcept { return values_[i]; }

  std::vector<double> real_values() const {
    if (tag_ != Parity::Real)
      throw StructuralError("real_values() on a complex-tagged field");
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
      out[i] = values_[i].real();
    return out;
  }

 private:
  SpectralGrid grid_;
  std::vector<complexd> values_;
  Parity tag_;
};

/// Fourier coefficients of a Field in FFT slot order. With the convention
/// used throughout, coefficient c_m approximates (1/period) * integral of
/// f(x) exp(-i xi_m x) dx, so f(x_j) = sum_m c_m exp(i xi_m x_j).
class SpectralField {
 public:
  SpectralField(SpectralGrid grid, std::vector<complexd> coeffs)
      : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size())
      throw StructuralError("coefficient length does not match grid size");
  }

  static SpectralField zeros(const SpectralGrid& grid) {
    return SpectralField(grid, std::vector<complexd>(grid.size()));
  }

  const SpectralGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const std::vector<complexd>& coeffs() const noexcept { return coeffs_; }
  std::vector<complexd>& coeffs() noexcept { return coeffs_; }
  const complexd& operator[](std::size_t i) const noexcept {
    return coeffs_[i];
  }
  complexd& operator[](std::size_t i) noexcept { return coeffs_[i]; }

 private:
  SpectralGrid grid_;
  std::vector<complexd> coeffs_;
};

inline void require_same_grid(const SpectralGrid& a, const SpectralGrid& b,
                              const char* what) {
  if (a != b) throw StructuralError(std::string(what) + ": grid mismatch");
}

// Pointwise linear arithmetic. Tag algebra: real op real -> real,
// anything else -> complex.
inline Parity combine_tags(Parity a, Parity b) {
  return (a == Parity::Real && b == Parity::Real) ? Parity::Real
                                                  : Parity::Complex;
}

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field operator*(complexd s, const Field& a);

/// Plain pointwise product without dealiasing. Intended for gauge phases
/// and test manufacture; nonlinear terms should use the dealiased helpers.
Field pointwise_product(const Field& a, const Field& b);

/// sqrt(dx * sum |f_i|^2): the exact trigonometric L^2 norm of the
/// band-limited interpolant.
double l2_norm(const Field& f);
double linf_norm(const Field& f);
/// (1/n) * sum f_i = mean value over the torus.
complexd mean_value(const Field& f);

double linf_distance(const Field& a, const Field& b);
double l2_distance(const Field& a, const Field& b);

}  // namespace gbo
