#pragma once

#include <utility>
#include <vector>

#include "hypertrace/bessel.hpp"
#include "hypertrace/lorentz.hpp"

namespace hypertrace {

/// sign * exp(log_abs); sign is 0 for an exact zero.
struct LogValue {
  double log_abs = 0.0;
  int sign = 0;
  double value() const;
};

struct Comparison {
  double closed = 0.0;
  double quadrature = 0.0;
  double rel_err = 0.0;
};

struct ComplexComparison {
  Complex closed;
  Complex quadrature;
  double rel_err = 0.0;
};

/// int_G exp(-mu cosh d(g.o, o)) dg = 2^d (pi/2mu)^{(d-1)/2} K_{(d-1)/2}(mu),
/// against the transform quadrature with the spectral factor dropped.
Comparison f_total_integral(int d, double mu);

/// Axis-aligned box for (v, r) in R^{n-1} x R_+.
class BoxDomain {
 public:
  BoxDomain(std::vector<std::pair<double, double>> v_bounds, double r_min, double r_max);
  const std::vector<std::pair<double, double>>& v_bounds() const { return v_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double v_volume() const;

  /// int_box r^{2 Re nu - 1} dr dv, exact.
  double i_nu(Complex nu) const;

 private:
  std::vector<std::pair<double, double>> v_;
  double r_min_;
  double r_max_;
};

/// closed = 2^n (pi/2mu)^{(n-1)/2} K_{conj nu}(mu) I_nu; quadrature evaluates the
/// inner (u', s') integral and the box integral numerically.
ComplexComparison sigma0_model(const CycleConfig& cfg, double mu, Complex nu, const BoxDomain& box);

/// The closed form alone, in log scale: log|.|, with the sign of its real part.
LogValue sigma0_closed_log(const CycleConfig& cfg, double mu, Complex nu, const BoxDomain& box);

struct JGammaResult {
  bool degenerate = false;      // M(gamma) vanishes: the r-integral does not localize
  Complex rescaled;             // J * exp(mu sqrt(delta_min))
  double log_abs = 0.0;         // log |J|
  double log_rescaled = 0.0;    // log |J| + mu sqrt(delta_min)
  double delta_min = 0.0;       // min of delta_u over the u-range
  Vector u_at_min;
};

/// J_gamma = 2^n (pi/2mu)^{(n-1)/2} int_range int_0^inf f^{nu/2} K_nu(mu sqrt f)
///           s_1^{nu+rho0} r^{conj nu + rho0 - n} dr du
/// with f = f_gamma(u, r) and s_1 = r0 s(u, r). Carried relative to exp(-mu sqrt(delta_min)).
JGammaResult j_gamma_quadrature(const LorentzMatrix& gamma,
                                const std::vector<std::pair<double, double>>& u_range,
                                const CycleConfig& cfg, double mu, Complex nu);

/// min of delta_u over a box of directions: grid scan then coordinate Brent.
std::pair<double, Vector> delta_min_over(const LorentzMatrix& gamma,
                                         const std::vector<std::pair<double, double>>& u_range,
                                         const CycleConfig& cfg);

/// Eigenvalue data r_j (lambda_j = rho^2 + r_j^2) with multiplicities.
class SpectrumModel {
 public:
  SpectrumModel(int d, double volume, std::vector<std::pair<double, int>> eigen);

  /// r_j = (j / c)^{1/d} for j = 1, 2, ... up to r_max, c the Weyl constant.
  static SpectrumModel synthetic_weyl(int d, double volume, double r_max);

  int d() const { return d_; }
  double volume() const { return volume_; }
  bool synthetic() const { return synthetic_; }
  const std::vector<std::pair<double, int>>& eigen() const { return eigen_; }
  double r_max() const;

 private:
  int d_;
  double volume_;
  std::vector<std::pair<double, int>> eigen_;
  bool synthetic_ = false;
};

/// vol / ((4 pi)^{d/2} Gamma(d/2 + 1))
double weyl_constant(int d, double volume);

/// Leading Weyl term c x^d.
double weyl_count(double x, int d, double volume);

struct TailBound {
  double tail = 0.0;                // sum_{r_j > R} r_j^d e^{-pi r_j / 2}
  double partial_sum_delta = 0.0;   // same sum over R < r_j <= 2R
};

/// Hormander and K_{ir} bound constants set to 1; mu only enters through them.
TailBound spectral_tail_bound(const SpectrumModel& spec, double mu, double cutoff);

/// sum_{r_j <= R} r_j^d e^{-pi r_j / 2}
double spectral_partial_sum(const SpectrumModel& spec, double cutoff);

/// int_R^inf x^d e^{-pi x/2} dN(x) for N the leading Weyl term, in closed form
/// via the incomplete gamma function.
double weyl_tail_integral(int d, double volume, double cutoff);

struct LimitRow {
  double mu = 0.0;
  double value_log = 0.0;
  int sign = 0;
  double envelope_log = 0.0;
};

/// Main term multiplied by 2^{-d} (2mu/pi)^{n/2} e^mu, which is
/// e^mu (pi/2mu)^{(d-n-1)/2} after dividing the spectral side by its transform
/// prefactor; tends to 2^{n-d} I_nu. The envelope is
/// (pi/2)^{(d-n-1)/2} mu^{-d/2}.
std::vector<LimitRow> rescaled_limit_shape(const CycleConfig& cfg,
                                           const std::vector<double>& mu_grid, Complex nu,
                                           const BoxDomain& box, int workers = 1);

}  // namespace hypertrace
