#pragma once

#include <vector>

#include "hypertrace/lorentz.hpp"

namespace hypertrace {

/// Invariants of gamma relative to the cycle G0/K0 along direction u.
///
/// Index shift: the rotation block of k(gamma) is read 1-indexed, so
/// u_{ij} = k(gamma)(i, j) of the full (d+1)x(d+1) matrix. m and n_coeffs
/// hold the entries for i = n..d-1, alpha for i = 1..d-1.
struct CycleInvariants {
  Vector m;
  Vector n_coeffs;
  double M = 0.0;
  double N_u = 0.0;
  double Q_u = 1.0;
  double beta = 0.0;
  Vector alpha;
  double r0 = 1.0;
  Vector w0;
  double u11 = 1.0;
  Vector u;             // padded to R^{d-1}
  double cross = 0.0;   // 2 sum m_i n_i = Q_u - 1

  /// 2 sqrt(M N_u) + Q_u, unclamped
  double delta_raw() const;
  /// 1 / s for k(gamma) n_u a_r = n_w a_s k'
  double s_inverse(double r) const;
};

CycleInvariants cycle_invariants(const LorentzMatrix& gamma, const Vector& u,
                                 const CycleConfig& cfg);

/// M r^2 + N_u r^-2 + Q_u
double f_gamma(const CycleInvariants& inv, double r);

/// f_gamma - 1 without forming Q_u first.
double f_gamma_minus_one(const CycleInvariants& inv, double r);

/// (N/M)^{1/4}; +inf when M = 0, 0 when N = 0 < M.
double r_star(const CycleInvariants& inv);

/// 2 sqrt(M N_u) + Q_u, clamped below at 1 (the lower bound holds exactly).
double delta_u(const LorentzMatrix& gamma, const Vector& u, const CycleConfig& cfg);

/// arccosh^+ sqrt(x), accurate for x near 1.
double cycle_distance(double f_value);

/// The point gamma n_u a_r xi_0.
HyperboloidPoint cycle_point(const LorentzMatrix& gamma, const Vector& u, double r,
                             const CycleConfig& cfg);

struct GeometricCheck {
  double closed_form_dist = 0.0;
  double bruteforce_dist = 0.0;
  double gap = 0.0;
  Vector v_opt;   // minimizer on the cycle, in R^{n-1}
  double t_opt = 1.0;
};

/// Closed form arccosh^+ sqrt f_gamma(u, r) against a direct minimization of
/// dist(gamma n_u a_r xi_0, n_v a_t xi_0) over v in R^{n-1}, t > 0.
/// Throws OptimizerError when the refinement does not converge.
GeometricCheck verify_f_geometric(const LorentzMatrix& gamma, const Vector& u, double r,
                                  const CycleConfig& cfg);

/// Minimal distance from a point to G0/K0 by direct minimization, seeded at
/// the identity (no use of the closed-form optimizer).
double distance_to_cycle_unseeded(const HyperboloidPoint& p, const CycleConfig& cfg);

struct U11Report {
  int examined = 0;          // elements outside G0
  double max_abs_u11 = 0.0;  // over those elements
  int argmax = -1;
  std::vector<int> violations;  // indices with |u11| >= 1 - margin
  bool vacuous() const { return examined == 0; }
};

U11Report check_u11_gap(const std::vector<LorentzMatrix>& ball, const CycleConfig& cfg,
                        double margin = 1e-9, double tol_group = kGroupTol);

}  // namespace hypertrace
