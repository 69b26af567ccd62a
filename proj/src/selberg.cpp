#include "hypertrace/selberg.hpp"

#include <cmath>
#include <numbers>

#include "hypertrace/errors.hpp"
#include "hypertrace/quadrature.hpp"

namespace hypertrace {

namespace {

constexpr double kUnderflowExp = -745.0;

double rel_err(Complex lhs, Complex rhs) {
  const double scale = std::max(std::abs(rhs), 1e-300);
  return std::abs(lhs - rhs) / scale;
}

Complex cexp_guarded(Complex e) {
  if (!(e.real() > kUnderflowExp)) return {0.0, 0.0};
  return std::exp(e);
}

}  // namespace

SpectralParam::SpectralParam(Complex nu, int d) : nu_(nu), rho_(0.5 * (d - 1)), d_(d) {
  if (d < 2) throw InvalidInput("spectral parameter needs d >= 2");
  const bool real_branch = nu.imag() == 0.0 && std::abs(nu.real()) < rho_;
  const bool imag_branch = nu.real() == 0.0 && std::isfinite(nu.imag());
  if (!real_branch && !imag_branch)
    throw InvalidInput("spectral parameter must lie in (-rho, rho) or on the imaginary axis");
}

double phi_mu(double mu, double x) {
  if (!(mu > 0)) throw InvalidInput("phi_mu needs mu > 0");
  if (!(x >= 0)) throw InvalidInput("phi_mu needs x >= 0");
  return std::exp(-mu * std::cosh(x));
}

IdentityCheck gr_identity_3_471_9(double alpha, double beta, Complex order) {
  if (!(alpha > 0) || !(beta > 0)) throw InvalidInput("3.471.9 needs alpha, beta > 0");
  // x = e^y
  auto f = [&](double y) {
    return cexp_guarded(order * y - alpha * std::exp(-y) - beta * std::exp(y));
  };
  quad::Options opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 0.0;
  IdentityCheck out;
  out.lhs = quad::integrate_real_line(f, opt).value;
  out.rhs = 2.0 * std::pow(alpha / beta, 0.5 * order) * bessel_k(order, 2.0 * std::sqrt(alpha * beta));
  out.rel_err = rel_err(out.lhs, out.rhs);
  return out;
}

IdentityCheck gr_identity_6_726_4(double a, double b, double c, Complex order, Sign sign) {
  if (!(a > 0) || !(b > 0)) throw InvalidInput("6.726.4 needs a, b > 0");
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  auto f = [&](double x) -> Complex {
    const double rad = std::sqrt(x * x + b * b);
    if (a * rad > 700.0) return {0.0, 0.0};
    return std::pow(rad, -s * order) * bessel_k(order, a * rad) * std::cos(c * x);
  };
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 0.0;
  IdentityCheck out;
  out.lhs = quad::integrate_to_infinity(f, 0.0, opt).value;
  const double ac = std::sqrt(a * a + c * c);
  out.rhs = std::sqrt(std::numbers::pi / 2) * std::pow(a, -s * order) *
            std::pow(b, 0.5 - s * order) * std::pow(ac, s * order - 0.5) *
            bessel_k(s * order - 0.5, b * ac);
  out.rel_err = rel_err(out.lhs, out.rhs);
  return out;
}

IdentityCheck gr_identity_6_592_12(double a, double b, double c, Complex z) {
  if (!(a > 0)) throw InvalidInput("6.592.12 needs a > 0");
  if (!(c > 0)) throw InvalidInput("6.592.12 needs c > 0");
  // x - 1 = e^y
  auto f = [&](double y) -> Complex {
    const double ey = std::exp(y);
    const double x = 1.0 + ey;
    const double arg = a * std::sqrt(x);
    if (arg > 700.0 || c * y < kUnderflowExp) return {0.0, 0.0};
    return std::exp(c * y - 0.5 * b * std::log1p(ey)) * bessel_k(z, arg);
  };
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 0.0;
  IdentityCheck out;
  out.lhs = quad::integrate_real_line(f, opt).value;
  out.rhs = std::pow(2.0, c) * std::tgamma(c) * std::pow(a, -c) * bessel_k(Complex(b - c), a);
  out.rel_err = rel_err(out.lhs, out.rhs);
  return out;
}

Complex selberg_transform_closed(int d, double mu, const SpectralParam& sp) {
  if (!(mu > 0)) throw InvalidInput("transform needs mu > 0");
  if (sp.d() != d) throw InvalidInput("spectral parameter built for a different d");
  return std::pow(2.0, d) * std::pow(std::numbers::pi / (2.0 * mu), 0.5 * (d - 1)) *
         bessel_k(sp.nu(), mu);
}

Complex selberg_integral_quadrature(int d, double mu, Complex s) {
  if (!(mu > 0)) throw InvalidInput("transform needs mu > 0");
  if (d < 2) throw InvalidInput("transform needs d >= 2");
  if (d > 6) throw UnsupportedDimension("transform quadrature is limited to d <= 6");
  const double half_dim = 0.5 * (d - 1);
  const double sphere = 2.0 * std::pow(std::numbers::pi, half_dim) / std::tgamma(half_dim);

  quad::Options inner_opt;
  inner_opt.rel_tol = 1e-11;
  inner_opt.abs_tol = 0.0;
  quad::Options outer_opt;
  outer_opt.rel_tol = 1e-10;
  outer_opt.abs_tol = 0.0;

  auto radial = [&](double q) -> Complex {
    const double w = 0.5 * (q * q + 1.0);
    // r = e^y
    auto g = [&](double y) { return cexp_guarded(-mu * (w * std::exp(y) + 0.5 * std::exp(-y)) + s * y); };
    const Complex inner = quad::integrate_real_line(g, inner_opt).value;
    return (d == 2 ? 1.0 : std::pow(q, d - 2)) * inner;
  };
  return sphere * quad::integrate_to_infinity(radial, 0.0, outer_opt).value;
}

Complex selberg_transform_quadrature(int d, double mu, const SpectralParam& sp) {
  if (sp.d() != d) throw InvalidInput("spectral parameter built for a different d");
  return selberg_integral_quadrature(d, mu, sp.nu() + sp.rho());
}

}  // namespace hypertrace
