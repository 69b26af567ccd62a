#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypertrace/errors.hpp"
#include "hypertrace/selberg.hpp"

using namespace hypertrace;
using std::numbers::pi;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("spectral parameter domain") {
  CHECK_NOTHROW(SpectralParam(0.9, 3));
  CHECK_NOTHROW(SpectralParam(-0.9, 3));
  CHECK_NOTHROW(SpectralParam(Complex(0, 7), 3));
  CHECK_THROWS_AS(SpectralParam(1.0, 3), InvalidInput);
  CHECK_THROWS_AS(SpectralParam(Complex(0.2, 1), 3), InvalidInput);
  CHECK(SpectralParam(Complex(0, 2), 4).lambda() == doctest::Approx(2.25 + 4.0));
  CHECK(SpectralParam(0.5, 4).lambda() == doctest::Approx(2.0));
}

TEST_CASE("frozen transform values") {
  CHECK(rel(selberg_transform_closed(3, 1.0, SpectralParam(0.0, 3)), 5.2907491286351156) < 1e-13);
  CHECK(rel(selberg_transform_closed(4, 2.0, SpectralParam(0.3, 4)), 1.2922638658605504) < 1e-13);
  CHECK(rel(selberg_transform_closed(5, 0.5, SpectralParam(Complex(0, 2), 5)), 5.2117887632211853) < 1e-12);
  CHECK(rel(selberg_transform_quadrature(3, 1.0, SpectralParam(0.0, 3)), 5.2907491286351156) < 1e-9);
}

TEST_CASE("closed form and quadrature agree across dimensions") {
  for (int d = 2; d <= 6; ++d) {
    const double rho = 0.5 * (d - 1);
    for (double mu : {0.3, 1.0, 4.0}) {
      for (Complex nu : {Complex(0, 0), Complex(0.5 * rho, 0), Complex(0, 1.5)}) {
        const SpectralParam sp(nu, d);
        CAPTURE(d);
        CAPTURE(mu);
        CAPTURE(nu);
        CHECK(rel(selberg_transform_quadrature(d, mu, sp), selberg_transform_closed(d, mu, sp)) < 1e-7);
      }
    }
  }
}

TEST_CASE("transform is even in nu") {
  for (Complex nu : {Complex(0.4, 0), Complex(0, 2.5)}) {
    const Complex a = selberg_transform_closed(4, 1.5, SpectralParam(nu, 4));
    const Complex b = selberg_transform_closed(4, 1.5, SpectralParam(-nu, 4));
    CHECK(rel(a, b) < 1e-12);
  }
}

TEST_CASE("unsupported dimensions are rejected by the quadrature") {
  CHECK_THROWS_AS(selberg_transform_quadrature(7, 1.0, SpectralParam(0.0, 7)), UnsupportedDimension);
  CHECK_NOTHROW(selberg_transform_closed(7, 1.0, SpectralParam(0.0, 7)));
  CHECK_THROWS_AS(selberg_transform_closed(3, 1.0, SpectralParam(0.0, 4)), InvalidInput);
  CHECK_THROWS_AS(selberg_transform_closed(3, 0.0, SpectralParam(0.0, 3)), InvalidInput);
}

TEST_CASE("phi_mu") {
  CHECK(phi_mu(2.0, 0.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(phi_mu(1.0, 1.0) == doctest::Approx(std::exp(-std::cosh(1.0))));
  CHECK_THROWS_AS(phi_mu(-1.0, 0.0), InvalidInput);
}

TEST_CASE("integral identities") {
  CHECK(gr_identity_3_471_9(0.7, 1.3, 0.4).rel_err < 1e-9);
  CHECK(gr_identity_3_471_9(2.0, 0.5, Complex(0.3, 1.2)).rel_err < 1e-9);
  CHECK(gr_identity_6_726_4(1.1, 0.8, 0.5, 0.3, Sign::Plus).rel_err < 1e-9);
  CHECK(gr_identity_6_726_4(1.1, 0.8, 0.5, Complex(0.2, 0.7), Sign::Minus).rel_err < 1e-9);
  CHECK(gr_identity_6_592_12(1.5, 0.6, 0.8, 0.6).rel_err < 1e-9);
  CHECK(gr_identity_6_592_12(1.5, 0.6, 0.8, -0.6).rel_err < 1e-9);
}

TEST_CASE("6.592.12 is not an identity away from z = +-b") {
  const IdentityCheck c = gr_identity_6_592_12(1.2, 0.5, 1.0, 1.7);
  CHECK(c.rel_err > 1e-2);
}

TEST_CASE("3.471.9 reduces to the Gamma function as alpha vanishes") {
  // int_0^inf x^{nu-1} e^{-beta x} dx = Gamma(nu) beta^{-nu}
  const IdentityCheck c = gr_identity_3_471_9(1e-10, 2.0, 1.5);
  CHECK(c.rel_err < 1e-8);
  CHECK(c.lhs.real() == doctest::Approx(std::tgamma(1.5) * std::pow(2.0, -1.5)).epsilon(1e-6));
}

TEST_CASE("identity argument validation") {
  CHECK_THROWS_AS(gr_identity_3_471_9(-1.0, 1.0, 0.5), InvalidInput);
  CHECK_THROWS_AS(gr_identity_6_726_4(1.0, 0.0, 1.0, 0.5, Sign::Plus), InvalidInput);
  CHECK_THROWS_AS(gr_identity_6_592_12(1.0, 0.5, 0.0, 0.5), InvalidInput);
}
