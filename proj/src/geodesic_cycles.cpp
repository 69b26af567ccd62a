#include "hypertrace/geodesic_cycles.hpp"

#include <cmath>
#include <limits>

#include "hypertrace/decompositions.hpp"
#include "hypertrace/optimize.hpp"

namespace hypertrace {

namespace {

Vector padded(const Vector& u, const CycleConfig& cfg) {
  if (u.size() != cfg.n() - 1)
    throw InvalidInput("direction u must lie in R^{n-1}");
  Vector out = Vector::Zero(cfg.d() - 1);
  out.head(cfg.n() - 1) = u;
  return out;
}

// Cycle point n_v a_t xi_0 for x = (v, log t).
HyperboloidPoint cycle_sample(const Vector& x, const CycleConfig& cfg) {
  Vector v = Vector::Zero(cfg.d() - 1);
  v.head(cfg.n() - 1) = x.head(cfg.n() - 1);
  return from_horospherical(HorospherVector(std::move(v), std::exp(x(cfg.n() - 1))));
}

// -<p - z, p - z> = 2(cosh d - 1), monotone in d and free of cancellation near 0.
double chord2(const HyperboloidPoint& p, const HyperboloidPoint& z) {
  const Vector diff = p.coords() - z.coords();
  return -minkowski_pairing(diff, diff);
}

}  // namespace

double CycleInvariants::delta_raw() const { return 2.0 * std::sqrt(M * N_u) + Q_u; }

double CycleInvariants::s_inverse(double r) const {
  return 0.5 * (1.0 - u11) * r + (0.5 * (1.0 + u11) + beta) / r;
}

CycleInvariants cycle_invariants(const LorentzMatrix& gamma, const Vector& u,
                                 const CycleConfig& cfg) {
  if (gamma.dim() != cfg.d()) throw InvalidInput("gamma dimension does not match (d, n)");
  const int d = cfg.d();
  const int n = cfg.n();
  const AnkFactors ank = iwasawa_ank(gamma);
  const Matrix& k = ank.k.matrix();
  auto U = [&k](int i, int j) { return k(i, j); };  // 1-indexed rotation block

  CycleInvariants inv;
  inv.u = padded(u, cfg);
  inv.r0 = ank.r0;
  inv.w0 = ank.w0;
  inv.u11 = U(1, 1);
  const double uu = u.squaredNorm();

  inv.beta = 0.5 * (1.0 - inv.u11) * uu;
  for (int i = 2; i <= n; ++i) inv.beta -= U(1, i) * u(i - 2);

  inv.alpha.resize(d - 1);
  for (int i = 1; i <= d - 1; ++i) {
    double a = 0.5 * U(i + 1, 1) * uu;
    for (int j = 2; j <= n; ++j) a += U(i + 1, j) * u(j - 2);
    inv.alpha(i - 1) = a;
  }

  inv.m.resize(d - n);
  inv.n_coeffs.resize(d - n);
  const double c_plus = 0.5 * (1.0 + inv.u11) + inv.beta;
  for (int i = n; i <= d - 1; ++i) {
    const double w = inv.w0(i - 1);
    const double ui1 = U(i + 1, 1);
    inv.m(i - n) = w * 0.5 * (1.0 - inv.u11) + 0.5 * ui1;
    inv.n_coeffs(i - n) = w * c_plus + inv.alpha(i - 1) - 0.5 * ui1;
  }
  inv.M = inv.m.squaredNorm();
  inv.N_u = inv.n_coeffs.squaredNorm();
  inv.cross = 2.0 * inv.m.dot(inv.n_coeffs);
  inv.Q_u = 1.0 + inv.cross;
  return inv;
}

double f_gamma(const CycleInvariants& inv, double r) {
  if (!(r > 0)) throw InvalidInput("f_gamma needs r > 0");
  return inv.M * r * r + inv.N_u / (r * r) + inv.Q_u;
}

double f_gamma_minus_one(const CycleInvariants& inv, double r) {
  if (!(r > 0)) throw InvalidInput("f_gamma needs r > 0");
  // sum_i (m_i r + n_i / r)^2, no cancellation against the leading 1
  return (inv.m * r + inv.n_coeffs / r).squaredNorm();
}

double r_star(const CycleInvariants& inv) {
  if (inv.M == 0.0) return std::numeric_limits<double>::infinity();
  if (inv.N_u == 0.0) return 0.0;
  return std::pow(inv.N_u / inv.M, 0.25);
}

double delta_u(const LorentzMatrix& gamma, const Vector& u, const CycleConfig& cfg) {
  return std::max(1.0, cycle_invariants(gamma, u, cfg).delta_raw());
}

double cycle_distance(double f_value) {
  // cosh d = sqrt f  <=>  sinh d = sqrt(f - 1)
  return std::asinh(std::sqrt(std::max(0.0, f_value - 1.0)));
}

HyperboloidPoint cycle_point(const LorentzMatrix& gamma, const Vector& u, double r,
                             const CycleConfig& cfg) {
  const HyperboloidPoint base = from_horospherical(HorospherVector(padded(u, cfg), r));
  return HyperboloidPoint(gamma.matrix() * base.coords(), LorentzMatrix::Unchecked{});
}

double distance_to_cycle_unseeded(const HyperboloidPoint& p, const CycleConfig& cfg) {
  auto q = [&](const Vector& x) { return chord2(p, cycle_sample(x, cfg)); };
  const Vector x0 = Vector::Zero(cfg.n());
  MinimizeResult coarse = nelder_mead(q, x0, 0.5, 4000, 1e-14);
  MinimizeResult fine = nelder_mead(q, coarse.x, 1e-3, 2000, 1e-15);
  const MinimizeResult& best = fine.f < coarse.f ? fine : coarse;
  return dist(p, cycle_sample(best.x, cfg));
}

GeometricCheck verify_f_geometric(const LorentzMatrix& gamma, const Vector& u, double r,
                                  const CycleConfig& cfg) {
  const CycleInvariants inv = cycle_invariants(gamma, u, cfg);
  const HyperboloidPoint p = cycle_point(gamma, u, r, cfg);
  const int n = cfg.n();

  GeometricCheck out;
  out.closed_form_dist = cycle_distance(1.0 + f_gamma_minus_one(inv, r));

  // Seed: v = first n-1 coordinates of v1, t = sqrt(s1^2 + |v1|^2 beyond them).
  const HorospherVector h = to_horospherical(p);
  Vector x0(n);
  x0.head(n - 1) = h.u.head(n - 1);
  const double tail = h.u.tail(h.u.size() - (n - 1)).squaredNorm();
  x0(n - 1) = 0.5 * std::log(h.r * h.r + tail);

  auto q = [&](const Vector& x) { return chord2(p, cycle_sample(x, cfg)); };
  MinimizeResult cd = coordinate_descent(q, x0, 1e-2, 20, 1e-15);
  MinimizeResult nm = nelder_mead(q, cd.x, 1e-4, 500, 1e-12);
  if (!nm.converged) {
    std::vector<std::vector<double>> trace = cd.trace;
    trace.insert(trace.end(), nm.trace.begin(), nm.trace.end());
    throw OptimizerError("cycle distance refinement did not converge in 500 iterations",
                         std::move(trace));
  }
  const MinimizeResult& best = nm.f < cd.f ? nm : cd;
  double brute = dist(p, cycle_sample(best.x, cfg));
  Vector x_best = best.x;

  // Independent start away from the closed-form optimizer; keep the lower value.
  const double other = distance_to_cycle_unseeded(p, cfg);
  brute = std::min(brute, other);

  out.bruteforce_dist = brute;
  out.gap = std::abs(out.closed_form_dist - out.bruteforce_dist);
  out.v_opt = x_best.head(n - 1);
  out.t_opt = std::exp(x_best(n - 1));
  return out;
}

U11Report check_u11_gap(const std::vector<LorentzMatrix>& ball, const CycleConfig& cfg,
                        double margin, double tol_group) {
  U11Report rep;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (check_membership(ball[i], Subgroup::G0, cfg, tol_group)) continue;
    ++rep.examined;
    const double u11 = std::abs(iwasawa_ank(ball[i]).k(1, 1));
    if (u11 > rep.max_abs_u11 || rep.argmax < 0) {
      rep.max_abs_u11 = u11;
      rep.argmax = static_cast<int>(i);
    }
    if (u11 >= 1.0 - margin) rep.violations.push_back(static_cast<int>(i));
  }
  return rep;
}

}  // namespace hypertrace
