#pragma once

#include <complex>

namespace hypertrace {

using Complex = std::complex<double>;

/// mantissa * exp(log_scale); keeps K_nu(x) representable for large x.
struct ScaledComplex {
  Complex mantissa;
  double log_scale = 0.0;
  Complex value() const { return mantissa * std::exp(log_scale); }
  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

/// K_nu(x) from K_nu(x) = 1/2 int_R exp(-x cosh t + nu t) dt, with the
/// contour moved to Im t = theta so that imaginary orders do not cancel
/// catastrophically. Purely imaginary orders return an exactly real value.
ScaledComplex bessel_k_log(Complex order, double x);

Complex bessel_k(Complex order, double x);

/// e^x K_nu(x)
Complex bessel_k_scaled(Complex order, double x);

/// sqrt(pi / 2x) e^{-x}; the leading term, independent of the order.
double bessel_k_asymptotic(Complex order, double x);

}  // namespace hypertrace
