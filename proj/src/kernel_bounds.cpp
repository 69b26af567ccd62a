#include "hypertrace/kernel_bounds.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hypertrace/decompositions.hpp"
#include "hypertrace/geodesic_cycles.hpp"
#include "hypertrace/quadrature.hpp"
#include "hypertrace/selberg.hpp"
#include "parallel.hpp"

namespace hypertrace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnderflowExp = -745.0;

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double sphere_area(int k) {
  // area of the unit sphere in R^k
  return 2.0 * std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k);
}

void check_range(const std::vector<std::pair<double, double>>& range, int dims, const char* what) {
  if (static_cast<int>(range.size()) != dims)
    throw InvalidInput(std::string(what) + " must have one interval per coordinate");
  for (const auto& [lo, hi] : range)
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
      throw InvalidInput(std::string(what) + " needs finite intervals with lo <= hi");
}

// Nested adaptive quadrature over a box; coordinates are filled from the front.
Complex integrate_box(const std::function<Complex(const Vector&)>& f,
                      const std::vector<std::pair<double, double>>& range, const quad::Options& opt) {
  const int dims = static_cast<int>(range.size());
  Vector x(dims);
  std::function<Complex(int)> level = [&](int k) -> Complex {
    if (k == dims) return f(x);
    auto g = [&, k](double t) {
      x(k) = t;
      return level(k + 1);
    };
    return quad::gauss_kronrod(g, range[k].first, range[k].second, opt).value;
  };
  return level(0);
}

}  // namespace

double LogValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

Comparison f_total_integral(int d, double mu) {
  if (!(mu > 0)) throw InvalidInput("f_total_integral needs mu > 0");
  Comparison out;
  out.closed = std::pow(2.0, d) * std::pow(kPi / (2.0 * mu), 0.5 * (d - 1)) *
               bessel_k(Complex(0.5 * (d - 1)), mu).real();
  // nu = -rho removes the spherical-function factor r^{nu+rho}
  out.quadrature = selberg_integral_quadrature(d, mu, Complex(0.0)).real();
  out.rel_err = rel_err(out.quadrature, out.closed);
  return out;
}

BoxDomain::BoxDomain(std::vector<std::pair<double, double>> v_bounds, double r_min, double r_max)
    : v_(std::move(v_bounds)), r_min_(r_min), r_max_(r_max) {
  for (const auto& [lo, hi] : v_)
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
      throw InvalidInput("box needs finite v-intervals with lo <= hi");
  if (!(r_min > 0)) throw InvalidInput("box needs r_min > 0");
  if (!std::isfinite(r_max) || !(r_max >= r_min)) throw InvalidInput("box needs finite r_max >= r_min");
}

double BoxDomain::v_volume() const {
  double vol = 1.0;
  for (const auto& [lo, hi] : v_) vol *= hi - lo;
  return vol;
}

double BoxDomain::i_nu(Complex nu) const {
  const double a = nu.real();
  double radial;
  if (a == 0.0) {
    radial = std::log(r_max_ / r_min_);
  } else {
    radial = (std::pow(r_max_, 2.0 * a) - std::pow(r_min_, 2.0 * a)) / (2.0 * a);
  }
  return radial * v_volume();
}

ComplexComparison sigma0_model(const CycleConfig& cfg, double mu, Complex nu, const BoxDomain& box) {
  if (!(mu > 0)) throw InvalidInput("sigma0_model needs mu > 0");
  const int n = cfg.n();
  if (static_cast<int>(box.v_bounds().size()) != n - 1)
    throw InvalidInput("box must have n-1 v-intervals");
  const Complex nub = std::conj(nu);

  ComplexComparison out;
  out.closed = std::pow(2.0, n) * std::pow(kPi / (2.0 * mu), 0.5 * (n - 1)) * bessel_k(nub, mu) *
               box.i_nu(nu);

  quad::Options inner_opt;
  inner_opt.rel_tol = 1e-11;
  inner_opt.abs_tol = 0.0;
  quad::Options outer_opt;
  outer_opt.rel_tol = 1e-10;
  outer_opt.abs_tol = 0.0;

  // s' = e^y, u' radial
  const Complex expo = nub + cfg.rho0() - static_cast<double>(n) + 1.0;
  auto radial = [&](double q) -> Complex {
    const double w = q * q + 1.0;
    auto g = [&](double y) -> Complex {
      const Complex e = -0.5 * mu * (w * std::exp(-y) + std::exp(y)) + expo * y;
      if (!(e.real() > kUnderflowExp)) return {0.0, 0.0};
      return std::exp(e);
    };
    const Complex inner = quad::integrate_real_line(g, inner_opt).value;
    return (n == 2 ? 1.0 : std::pow(q, n - 2)) * inner;
  };
  const Complex model = sphere_area(n - 1) * quad::integrate_to_infinity(radial, 0.0, outer_opt).value;

  auto weight = [&](double r) { return std::pow(r, 2.0 * nu.real() - 1.0); };
  const double r_integral = quad::gauss_kronrod(weight, box.r_min(), box.r_max(), outer_opt).value;
  out.quadrature = model * r_integral * box.v_volume();
  out.rel_err = rel_err(out.quadrature, out.closed);
  return out;
}

LogValue sigma0_closed_log(const CycleConfig& cfg, double mu, Complex nu, const BoxDomain& box) {
  if (!(mu > 0)) throw InvalidInput("sigma0 needs mu > 0");
  const int n = cfg.n();
  const ScaledComplex k = bessel_k_log(std::conj(nu), mu);
  const double inu = box.i_nu(nu);
  LogValue out;
  const double re = k.mantissa.real() * inu;
  if (re == 0.0) return out;
  out.sign = re > 0 ? 1 : -1;
  out.log_abs = n * std::log(2.0) + 0.5 * (n - 1) * std::log(kPi / (2.0 * mu)) + k.log_abs() +
                std::log(std::abs(inu));
  return out;
}

std::pair<double, Vector> delta_min_over(const LorentzMatrix& gamma,
                                         const std::vector<std::pair<double, double>>& u_range,
                                         const CycleConfig& cfg) {
  const int dims = cfg.n() - 1;
  check_range(u_range, dims, "u-range");
  auto delta = [&](const Vector& u) { return delta_u(gamma, u, cfg); };

  // grid scan
  const int per_axis = dims == 1 ? 201 : (dims == 2 ? 41 : 11);
  Vector best(dims), u(dims);
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<int> idx(dims, 0);
  while (true) {
    for (int k = 0; k < dims; ++k) {
      const auto [lo, hi] = u_range[k];
      u(k) = lo + (hi - lo) * idx[k] / (per_axis - 1);
    }
    const double v = delta(u);
    if (v < best_val) {
      best_val = v;
      best = u;
    }
    int k = 0;
    while (k < dims && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == dims) break;
  }

  // coordinate Brent inside one grid cell around the best node
  for (int sweep = 0; sweep < 10; ++sweep) {
    const double before = best_val;
    for (int k = 0; k < dims; ++k) {
      const auto [lo, hi] = u_range[k];
      const double h = (hi - lo) / (per_axis - 1);
      const double a = std::max(lo, best(k) - h);
      const double b = std::min(hi, best(k) + h);
      if (!(b > a)) continue;
      Vector trial = best;
      auto line = [&](double t) {
        trial(k) = t;
        return delta(trial);
      };
      const auto [t, v] = boost::math::tools::brent_find_minima(line, a, b, 52);
      if (v < best_val) {
        best_val = v;
        best(k) = t;
      }
    }
    if (before - best_val <= 1e-15 * best_val) break;
  }
  return {best_val, best};
}

JGammaResult j_gamma_quadrature(const LorentzMatrix& gamma,
                                const std::vector<std::pair<double, double>>& u_range,
                                const CycleConfig& cfg, double mu, Complex nu) {
  if (!(mu > 0)) throw InvalidInput("j_gamma needs mu > 0");
  const int n = cfg.n();
  check_range(u_range, n - 1, "u-range");
  if (check_membership(gamma, Subgroup::G0, cfg))
    throw InvalidInput("j_gamma needs gamma outside G0");

  JGammaResult out;
  const Vector u_mid = [&] {
    Vector u(n - 1);
    for (int k = 0; k < n - 1; ++k) u(k) = 0.5 * (u_range[k].first + u_range[k].second);
    return u;
  }();
  if (cycle_invariants(gamma, u_mid, cfg).M <= 1e-14) {
    out.degenerate = true;
    out.log_abs = out.log_rescaled = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  const auto [dmin, umin] = delta_min_over(gamma, u_range, cfg);
  out.delta_min = dmin;
  out.u_at_min = umin;
  const double sqrt_dmin = std::sqrt(dmin);
  const double rho0 = cfg.rho0();
  const Complex nub = std::conj(nu);
  const Complex r_expo = nub + rho0 - static_cast<double>(n) + 1.0;  // includes dr = r dy

  quad::Options inner_opt;
  inner_opt.rel_tol = 1e-9;
  inner_opt.abs_tol = 0.0;
  quad::Options outer_opt;
  outer_opt.rel_tol = 1e-8;
  outer_opt.abs_tol = 0.0;

  auto over_r = [&](const Vector& u) -> Complex {
    const CycleInvariants inv = cycle_invariants(gamma, u, cfg);
    const double centre = inv.N_u > 0 ? 0.25 * std::log(inv.N_u / inv.M) : 0.0;
    auto g = [&](double x) -> Complex {
      const double y = centre + x;
      if (std::abs(y) > 300.0) return {0.0, 0.0};  // f ~ e^{600} there
      const double r = std::exp(y);
      const double f = 1.0 + f_gamma_minus_one(inv, r);
      const double sf = std::sqrt(f);
      if (mu * (sf - sqrt_dmin) > 700.0) return {0.0, 0.0};
      const double log_s1 = std::log(inv.r0) - std::log(inv.s_inverse(r));
      const ScaledComplex k = bessel_k_log(nu, mu * sf);
      const Complex e = 0.5 * nu * std::log(f) + (nu + rho0) * log_s1 + r_expo * y + k.log_scale +
                        mu * sqrt_dmin;
      if (!(e.real() > kUnderflowExp)) return {0.0, 0.0};
      return k.mantissa * std::exp(e);
    };
    return quad::integrate_real_line(g, inner_opt).value;
  };

  const Complex integral = integrate_box(over_r, u_range, outer_opt);
  const double log_pref = n * std::log(2.0) + 0.5 * (n - 1) * std::log(kPi / (2.0 * mu));
  out.rescaled = integral * std::exp(log_pref);
  out.log_rescaled = std::log(std::abs(integral)) + log_pref;
  out.log_abs = out.log_rescaled - mu * sqrt_dmin;
  return out;
}

SpectrumModel::SpectrumModel(int d, double volume, std::vector<std::pair<double, int>> eigen)
    : d_(d), volume_(volume), eigen_(std::move(eigen)) {
  if (d < 2) throw InvalidInput("spectrum needs d >= 2");
  if (!(volume > 0)) throw InvalidInput("spectrum needs a positive volume");
  for (std::size_t i = 0; i < eigen_.size(); ++i) {
    if (!(eigen_[i].first >= 0)) throw InvalidInput("spectral parameters r_j must be >= 0");
    if (eigen_[i].second < 1) throw InvalidInput("multiplicities must be >= 1");
    if (i > 0 && eigen_[i].first < eigen_[i - 1].first)
      throw InvalidInput("spectral parameters must be nondecreasing");
  }
}

SpectrumModel SpectrumModel::synthetic_weyl(int d, double volume, double r_max) {
  if (!(r_max > 0)) throw InvalidInput("synthetic spectrum needs r_max > 0");
  const double c = weyl_constant(d, volume);
  std::vector<std::pair<double, int>> eigen;
  for (long j = 1;; ++j) {
    const double r = std::pow(j / c, 1.0 / d);
    if (r > r_max) break;
    eigen.emplace_back(r, 1);
  }
  SpectrumModel out(d, volume, std::move(eigen));
  out.synthetic_ = true;
  return out;
}

double SpectrumModel::r_max() const { return eigen_.empty() ? 0.0 : eigen_.back().first; }

double weyl_constant(int d, double volume) {
  return volume / (std::pow(4.0 * kPi, 0.5 * d) * std::tgamma(0.5 * d + 1.0));
}

double weyl_count(double x, int d, double volume) {
  if (!(x >= 0)) throw InvalidInput("weyl_count needs x >= 0");
  return weyl_constant(d, volume) * std::pow(x, d);
}

namespace {

double tail_term(double r, int d) { return std::pow(r, d) * std::exp(-0.5 * kPi * r); }

// Sum over lo < r_j <= hi, largest r first so the small terms accumulate first.
double window_sum(const SpectrumModel& spec, double lo, double hi) {
  double s = 0.0;
  const auto& e = spec.eigen();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (it->first > hi) continue;
    if (it->first <= lo) break;
    s += it->second * tail_term(it->first, spec.d());
  }
  return s;
}

}  // namespace

TailBound spectral_tail_bound(const SpectrumModel& spec, double mu, double cutoff) {
  if (!(mu > 0)) throw InvalidInput("spectral_tail_bound needs mu > 0");
  if (!(cutoff >= 0)) throw InvalidInput("spectral_tail_bound needs a cutoff >= 0");
  TailBound out;
  const double inf = std::numeric_limits<double>::infinity();
  out.tail = window_sum(spec, cutoff, inf);
  out.partial_sum_delta = window_sum(spec, cutoff, 2.0 * cutoff);
  return out;
}

double spectral_partial_sum(const SpectrumModel& spec, double cutoff) {
  return window_sum(spec, -1.0, cutoff);
}

double weyl_tail_integral(int d, double volume, double cutoff) {
  if (!(cutoff >= 0)) throw InvalidInput("weyl_tail_integral needs a cutoff >= 0");
  // dN = c d x^{d-1} dx, so the integral is c d a^{-2d} Gamma(2d, a R) with a = pi/2
  const double a = 0.5 * kPi;
  const double c = weyl_constant(d, volume);
  return c * d * std::pow(a, -2.0 * d) * boost::math::tgamma(2.0 * d, a * cutoff);
}

std::vector<LimitRow> rescaled_limit_shape(const CycleConfig& cfg, const std::vector<double>& mu_grid,
                                           Complex nu, const BoxDomain& box, int workers) {
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    if (!(mu_grid[i] > 0)) throw InvalidInput("mu grid must be positive");
    if (i > 0 && !(mu_grid[i] > mu_grid[i - 1])) throw InvalidInput("mu grid must be increasing");
  }
  if (!mu_grid.empty() && mu_grid.back() > 60.0) throw InvalidInput("mu grid is capped at 60");
  const int d = cfg.d();
  const int n = cfg.n();
  std::vector<LimitRow> rows(mu_grid.size());
  detail::parallel_for(mu_grid.size(), workers, [&](std::size_t i) {
    const double mu = mu_grid[i];
    const LogValue s0 = sigma0_closed_log(cfg, mu, nu, box);
    LimitRow& row = rows[i];
    row.mu = mu;
    row.sign = s0.sign;
    row.value_log = s0.log_abs - d * std::log(2.0) + 0.5 * n * std::log(2.0 * mu / kPi) + mu;
    row.envelope_log = 0.5 * (d - n - 1) * std::log(0.5 * kPi) - 0.5 * d * std::log(mu);
  });
  return rows;
}

}  // namespace hypertrace
