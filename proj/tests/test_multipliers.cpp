#include <cmath>

#include "doctest.h"
#include "gbo/errors.hpp"
#include "gbo/multipliers.hpp"
#include "test_util.hpp"

using namespace gbo;
using namespace gbo::testutil;

namespace {

/// Band-limited zero-mean real field with empty Nyquist slot: the common
/// domain on which the odd-symbol algebra below is exact.
Field clean_field(const SpectralGrid& g, std::uint64_t seed) {
  SamplerConfig sc;
  sc.amplitude = 1.0;
  return random_packets(g, sc, seed, 0);
}

}  // namespace

TEST_CASE("Hilbert transform squares to minus identity off the mean") {
  SpectralGrid g = small_grid(128, 40.0);
  Field f = clean_field(g, 2);
  Field hh = hilbert(hilbert(f));
  CHECK(hh.is_real());
  CHECK(field_distance(hh, -1.0 * f) <= 1e-13);
}

TEST_CASE("half-line projections resolve the identity") {
  SpectralGrid g = small_grid(128, 40.0);
  Field f = clean_field(g, 3);
  // P+ + P- recovers everything except the (empty) mean and Nyquist slots.
  Field sum = project_pos(f) + project_neg(f);
  CHECK(field_distance(sum, f) <= 1e-13);
  // i H = P+ - P-, slot for slot.
  Field lhs = complexd(0.0, 1.0) * hilbert(f);
  Field rhs = project_pos(f) - project_neg(f);
  CHECK(field_distance(lhs, rhs) <= 1e-13);
}

TEST_CASE("|D| equals H d/dx on band-limited data") {
  SpectralGrid g = small_grid(128, 40.0);
  Field f = clean_field(g, 5);
  Field lhs = frac_derivative(f, 1.0);
  Field rhs = hilbert(derivative(f));
  CHECK(field_distance(lhs, rhs) <= 1e-12);
}

TEST_CASE("fractional derivatives compose additively") {
  SpectralGrid g = small_grid(128, 40.0);
  Field f = clean_field(g, 7);
  Field twice = frac_derivative(frac_derivative(f, 0.5), 0.5);
  Field once = frac_derivative(f, 1.0);
  CHECK(field_distance(twice, once) <= 1e-12);
  // Negative order inverts positive order on zero-mean fields.
  Field back = frac_derivative(frac_derivative(f, 0.75), -0.75);
  CHECK(field_distance(back, f) <= 1e-12);
}

TEST_CASE("negative-order |D| rejects nonzero mean") {
  SpectralGrid g = small_grid(64);
  Field f = cosine(g, 3) + cosine(g, 0, 0.5);  // constant offset
  CHECK_THROWS_AS(frac_derivative(f, -0.5), DomainError);
}

TEST_CASE("derivative of a cosine is the exact closed form") {
  SpectralGrid g(64, 10.0);
  const long m = 4;
  const double xi = 2.0 * std::numbers::pi * m / g.period();
  Field d = derivative(cosine(g, m));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double want = -xi * std::sin(xi * g.node(i));
    CHECK(std::abs(d[i].real() - want) <= 1e-12 * xi);
  }
  CHECK(d.is_real());
}

TEST_CASE("odd symbols leave the Nyquist slot empty") {
  SpectralGrid g = small_grid(32);
  for (const auto& sym :
       {hilbert_symbol(g), derivative_symbol(g), projection_pos_symbol(g),
        projection_neg_symbol(g)})
    CHECK(sym.values[g.nyquist_slot()] == complexd(0.0, 0.0));
  // |D|^alpha keeps the Nyquist magnitude; the propagator keeps modulus one.
  CHECK(frac_derivative_symbol(g, 0.5).values[g.nyquist_slot()].real() ==
        doctest::Approx(std::sqrt(g.max_wavenumber())));
  CHECK(std::abs(propagator_symbol(g, 0.37).values[g.nyquist_slot()]) ==
        doctest::Approx(1.0));
}

TEST_CASE("exact dealiased power matches a refined-grid oracle") {
  SpectralGrid g(32, 7.0);
  Field f = clean_field(g, 9);
  for (int d : {2, 3, 5}) {
    Field p = dealiased_power(f, d, DealiasMode::Exact);
    CHECK(p.is_real());

    // Oracle: synthesize on an 8x grid (ample for degree <= 8), take the
    // pointwise power there, transform back and compare the retained band.
    SpectralGrid big(8 * g.size(), g.period());
    SpectralField cf = forward_transform(f);
    std::vector<complexd> embedded(big.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (i != g.nyquist_slot()) embedded[big.slot(g.mode(i))] = cf[i];
    Field ff = inverse_transform(SpectralField(big, std::move(embedded)));
    std::vector<complexd> w(big.size());
    for (std::size_t i = 0; i < big.size(); ++i)
      w[i] = std::pow(ff[i].real(), d);
    SpectralField cw =
        forward_transform(Field(big, std::move(w), Parity::Complex));
    SpectralField cp = forward_transform(p);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i == g.nyquist_slot()) continue;
      err = std::max(err, std::abs(cp[i] - cw[big.slot(g.mode(i))]));
      scale = std::max(scale, std::abs(cw[big.slot(g.mode(i))]));
    }
    CHECK(err <= 1e-12 * std::max(scale, 1.0));
  }
}

TEST_CASE("dealiased_pow_times reduces to dealiased_power") {
  SpectralGrid g(64, 9.0);
  Field f = clean_field(g, 13);
  Field a = dealiased_pow_times(f, 2, f);
  Field b = dealiased_power(f, 3);
  CHECK(field_distance(a, b) <= 1e-13);
}

TEST_CASE("two-thirds dealiasing agrees with exact inside the kept band") {
  SpectralGrid g(128, 11.0);
  SamplerConfig sc;
  sc.band_fraction = 0.125;  // narrow data: the square stays below n/3
  Field f = random_packets(g, sc, 17, 0);
  SpectralField ce = forward_transform(dealiased_power(f, 2, DealiasMode::Exact));
  SpectralField ct =
      forward_transform(dealiased_power(f, 2, DealiasMode::TwoThirds));
  const double cutoff = static_cast<double>(g.size()) / 3.0;
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(static_cast<double>(g.mode(i))) <= cutoff)
      err = std::max(err, std::abs(ce[i] - ct[i]));
  CHECK(err <= 1e-13);
}

TEST_CASE("propagator is unitary and satisfies the group law") {
  SpectralGrid g = small_grid(64, 21.0);
  Field f = clean_field(g, 19);
  const double t = 0.73, s = -0.21;
  for (auto kind : {Dispersion::BenjaminOno, Dispersion::Schrodinger}) {
    Field ut = free_propagate(t, f, kind);
    CHECK(l2_norm(ut) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
    Field uts = free_propagate(s, ut, kind);
    Field direct = free_propagate(t + s, f, kind);
    CHECK(field_distance(uts, direct) <= 1e-13);
  }
  // The dispersive group keeps real data real; Schrodinger does not claim to.
  CHECK(free_propagate(t, f, Dispersion::BenjaminOno).is_real());
}

TEST_CASE("dispersive propagator translates a single mode by its speed") {
  // exp(i xi x) picks up the phase exp(-i xi |xi| t): a right-moving wave
  // with velocity |xi|.
  SpectralGrid g = small_grid(64);
  const long m = 3;
  Field u = free_propagate(0.5, cosine(g, m));
  const double xi = static_cast<double>(m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double want = std::cos(xi * (g.node(i) - xi * 0.5));
    CHECK(std::abs(u[i].real() - want) <= 1e-12);
  }
}
