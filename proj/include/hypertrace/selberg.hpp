#pragma once

#include "hypertrace/bessel.hpp"

namespace hypertrace {

/// nu in (-rho, rho) or on the imaginary axis; lambda = rho^2 - nu^2.
class SpectralParam {
 public:
  SpectralParam(Complex nu, int d);
  Complex nu() const { return nu_; }
  double rho() const { return rho_; }
  int d() const { return d_; }
  double lambda() const { return (rho_ * rho_ - nu_ * nu_).real(); }

 private:
  Complex nu_;
  double rho_;
  int d_;
};

/// exp(-mu cosh x)
double phi_mu(double mu, double x);

struct IdentityCheck {
  Complex lhs;
  Complex rhs;
  double rel_err = 0.0;
};

/// int_0^inf x^{nu-1} exp(-alpha/x - beta x) dx = 2 (alpha/beta)^{nu/2} K_nu(2 sqrt(alpha beta))
IdentityCheck gr_identity_3_471_9(double alpha, double beta, Complex order);

enum class Sign { Plus, Minus };

/// int_0^inf (x^2+b^2)^{-+nu/2} K_nu(a sqrt(x^2+b^2)) cos(cx) dx
///   = sqrt(pi/2) a^{-+nu} b^{1/2-+nu} (a^2+c^2)^{+-nu/2-1/4} K_{+-nu-1/2}(b sqrt(a^2+c^2))
/// Sign::Plus selects the upper signs.
IdentityCheck gr_identity_6_726_4(double a, double b, double c, Complex order, Sign sign);

/// int_1^inf x^{-b/2} (x-1)^{c-1} K_z(a sqrt x) dx against 2^c Gamma(c) a^{-c} K_{b-c}(a).
/// The closed form holds for z = +-b; other z give a genuine mismatch.
IdentityCheck gr_identity_6_592_12(double a, double b, double c, Complex z);

/// 2^d (pi/2mu)^{(d-1)/2} K_nu(mu)
Complex selberg_transform_closed(int d, double mu, const SpectralParam& sp);

/// Direct quadrature of
///   int_{R^{d-1}} int_0^inf exp[-mu((|u|^2+1) r/2 + 1/(2r))] r^{nu+rho-1} dr du
/// reduced to a radial u-integral. d <= 6.
Complex selberg_transform_quadrature(int d, double mu, const SpectralParam& sp);

/// Same integral with an arbitrary exponent s in place of nu + rho.
Complex selberg_integral_quadrature(int d, double mu, Complex s);

}  // namespace hypertrace
