#include "hypertrace/bessel.hpp"

#include <cmath>
#include <numbers>

#include "hypertrace/errors.hpp"
#include "hypertrace/quadrature.hpp"

namespace hypertrace {

namespace {

constexpr double kDecades = 40.0;  // integrand dropped below e^-40 of its peak

// Height of the contour. For |Im nu| < x the saddle of -x cosh t + nu t sits
// at i*asin(Im nu / x); beyond that it moves to the line pi/2, which must be
// avoided to keep decay at both ends.
double contour_height(double b, double x) {
  if (b == 0.0) return 0.0;
  const double cap = std::numbers::pi / 2 - std::min(std::numbers::pi / 4, 3.0 / std::abs(b));
  const double theta = std::min(std::asin(std::min(1.0, std::abs(b) / x)), cap);
  return std::copysign(theta, b);
}

// Crossing of L(t) = -c cosh t + a t with level from the peak outwards.
double truncation(double c, double a, double tp, double level, double dir) {
  auto L = [&](double t) { return -c * std::cosh(t) + a * t; };
  double step = 1.0;
  double inside = tp;
  double outside = tp + dir * step;
  while (L(outside) > level) {
    inside = outside;
    step *= 2.0;
    outside = tp + dir * step;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (L(mid) > level)
      inside = mid;
    else
      outside = mid;
  }
  return outside;
}

}  // namespace

ScaledComplex bessel_k_log(Complex order, double x) {
  if (!(x > 0) || !std::isfinite(x)) throw InvalidInput("bessel_k needs x > 0");
  const double a = order.real();
  const double b = order.imag();
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("bessel_k order must be finite");
  if (std::abs(a) > 50.0) throw InvalidInput("bessel_k needs |Re order| <= 50");

  const double theta = contour_height(b, x);
  const double c = x * std::cos(theta);
  // |integrand| = exp(-c cosh t + a t - b theta)
  const double tp = std::asinh(a / c);
  const double peak = -c * std::cosh(tp) + a * tp;
  const double level = peak - kDecades;
  const double t_hi = truncation(c, a, tp, level, 1.0);
  const double t_lo = truncation(c, a, tp, level, -1.0);
  const double shift = peak - b * theta;

  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-16;
  opt.max_panels = 4000;

  ScaledComplex out;
  out.log_scale = shift;
  if (b == 0.0) {
    auto f = [&](double t) { return std::exp(-x * std::cosh(t) + a * t - shift); };
    out.mantissa = 0.5 * quad::gauss_kronrod(f, t_lo, t_hi, opt).value;
    return out;
  }
  const Complex it(0.0, theta);
  auto g = [&](double t) {
    const Complex tau = t + it;
    return std::exp(-x * std::cosh(tau) + order * tau - shift);
  };
  if (a == 0.0) {
    // g(-t) = conj g(t): the integral over R is twice the real part over t > 0.
    auto re = [&](double t) { return g(t).real(); };
    out.mantissa = quad::gauss_kronrod(re, 0.0, t_hi, opt).value;
    return out;
  }
  out.mantissa = 0.5 * quad::gauss_kronrod(g, t_lo, t_hi, opt).value;
  return out;
}

Complex bessel_k(Complex order, double x) { return bessel_k_log(order, x).value(); }

Complex bessel_k_scaled(Complex order, double x) {
  const ScaledComplex k = bessel_k_log(order, x);
  return k.mantissa * std::exp(k.log_scale + x);
}

double bessel_k_asymptotic(Complex /*order*/, double x) {
  if (!(x > 0)) throw InvalidInput("bessel_k_asymptotic needs x > 0");
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
}

}  // namespace hypertrace
