#include <numbers>

#include "doctest.h"
#include "gbo/errors.hpp"
#include "gbo/fft.hpp"
#include "test_util.hpp"

using namespace gbo;
using namespace gbo::testutil;

TEST_CASE("grid slot/mode layout and wavenumbers") {
  SpectralGrid g(16, 2.0 * std::numbers::pi);
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(7) == 7);
  CHECK(g.mode(8) == -8);  // Nyquist, unpaired
  CHECK(g.mode(15) == -1);
  CHECK(g.nyquist_slot() == 8);
  CHECK(g.slot(-1) == 15);
  CHECK(g.slot(7) == 7);
  CHECK(g.wavenumber(3) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g.min_wavenumber() == doctest::Approx(1.0));
  CHECK(g.max_wavenumber() == doctest::Approx(8.0));
  CHECK_THROWS_AS(g.slot(8), StructuralError);
  CHECK_THROWS_AS(SpectralGrid(48, 1.0), StructuralError);   // not a power of two
  CHECK_THROWS_AS(SpectralGrid(8, 1.0), StructuralError);    // too small
  CHECK_THROWS_AS(SpectralGrid(64, -1.0), StructuralError);  // bad period
}

TEST_CASE("forward transform matches the quadratic-cost DFT") {
  SpectralGrid g(32, 5.0);
  Field f = random_complex(g, 11);
  SpectralField c = forward_transform(f);
  auto oracle = naive_dft(f);
  CHECK(max_abs_diff(c.coeffs(), oracle) <= 1e-13 * max_abs(oracle));
}

TEST_CASE("transform round trip is the identity") {
  SpectralGrid g = small_grid(128, 17.0);
  Field f = random_complex(g, 3);
  Field back = inverse_transform(forward_transform(f));
  CHECK(field_distance(f, back) <= 1e-13);
}

TEST_CASE("single cosine occupies exactly its mode pair") {
  SpectralGrid g = small_grid(64);
  SpectralField c = forward_transform(cosine(g, 5));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double expected =
        (g.mode(i) == 5 || g.mode(i) == -5) ? 0.5 : 0.0;
    CHECK(std::abs(c[i] - complexd(expected, 0.0)) <= 1e-14);
  }
}

TEST_CASE("Parseval: L2 of samples equals L2 of coefficients") {
  SpectralGrid g(64, 11.0);
  Field f = random_real(g, 21);
  SpectralField c = forward_transform(f);
  double phys = 0.0, spec = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    phys += g.dx() * std::norm(f[i]);
    spec += g.period() * std::norm(c[i]);
  }
  CHECK(phys == doctest::Approx(spec).epsilon(1e-13));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(phys)).epsilon(1e-13));
}

TEST_CASE("real synthesis accepts Hermitian data and rejects the rest") {
  SpectralGrid g = small_grid(32);
  SpectralField c = SpectralField::zeros(g);
  c[g.slot(3)] = complexd(0.2, -0.7);
  c[g.slot(-3)] = std::conj(c[g.slot(3)]);
  Field f = inverse_transform_real(c);
  CHECK(f.is_real());

  c[g.slot(-3)] = complexd(0.9, 0.9);  // break the symmetry
  CHECK_THROWS_AS(inverse_transform_real(c), StructuralError);
}

TEST_CASE("hermitian projection") {
  SpectralGrid g = small_grid(32);

  SUBCASE("is idempotent and fixes symmetric data") {
    SpectralField c = SpectralField::zeros(g);
    c[g.slot(2)] = complexd(1.0, 2.0);
    c[g.slot(-2)] = std::conj(c[g.slot(2)]);
    c[0] = 0.4;
    SpectralField p = hermitian_project(c);
    CHECK(max_abs_diff(p.coeffs(), c.coeffs()) == 0.0);
  }

  SUBCASE("averages mode pairs and realifies mean and Nyquist") {
    SpectralField c = forward_transform(random_complex(g, 5));
    SpectralField p = hermitian_project(c);
    CHECK(p[0].imag() == 0.0);
    CHECK(p[g.nyquist_slot()].imag() == 0.0);
    for (std::size_t i = 1; i < g.size() / 2; ++i)
      CHECK(std::abs(p[i] - std::conj(p[g.size() - i])) == 0.0);
    SpectralField pp = hermitian_project(p);
    CHECK(max_abs_diff(pp.coeffs(), p.coeffs()) == 0.0);
    // Projection of real-field coefficients moves them by at most roundoff.
    SpectralField cr = forward_transform(random_real(g, 6));
    SpectralField pr = hermitian_project(cr);
    CHECK(max_abs_diff(pr.coeffs(), cr.coeffs()) <= 1e-15);
  }
}

TEST_CASE("field tag algebra") {
  SpectralGrid g = small_grid(32);
  Field r = random_real(g, 1);
  Field z = random_complex(g, 2);
  CHECK((r + r).is_real());
  CHECK_FALSE((r + z).is_real());
  CHECK((2.0 * r).is_real());
  CHECK_FALSE((complexd(0.0, 1.0) * r).is_real());
  CHECK_THROWS_AS(r + random_real(SpectralGrid(64, 1.0), 1), StructuralError);
}
