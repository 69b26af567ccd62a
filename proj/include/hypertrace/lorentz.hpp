#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "hypertrace/errors.hpp"

namespace hypertrace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kGroupTol = 1e-9;
inline constexpr double kPointTol = 1e-9;

/// J = diag(1, -1, ..., -1) on R^{d+1}.
Matrix minkowski_form(int d);

/// x0*y0 - sum_i x_i*y_i
double minkowski_pairing(const Vector& x, const Vector& y);

/// Element of SO_0(1,d) stored as a dense (d+1)x(d+1) matrix.
///
/// from_matrix validates; the unchecked constructor is for products and
/// constructors that are Lorentz by construction.
class LorentzMatrix {
 public:
  struct Unchecked {};

  LorentzMatrix() = default;
  LorentzMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  static LorentzMatrix from_matrix(const Matrix& m, double tol = kGroupTol);
  static LorentzMatrix identity(int d);

  int dim() const { return static_cast<int>(m_.rows()) - 1; }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  LorentzMatrix operator*(const LorentzMatrix& o) const;
  Vector operator*(const Vector& x) const { return m_ * x; }

  /// J g^T J, exact up to sign flips.
  LorentzMatrix inverse() const;

  /// Largest entry of |g^T J g - J|.
  double form_defect() const;

  /// max(1, max |g_ij|); used to scale tolerances for long products.
  double scale() const;

 private:
  Matrix m_;
};

/// Upper-sheet point x0^2 - |x|^2 = 1.
class HyperboloidPoint {
 public:
  HyperboloidPoint() = default;
  HyperboloidPoint(Vector x, LorentzMatrix::Unchecked) : x_(std::move(x)) {}

  static HyperboloidPoint from_coords(const Vector& x, double tol = kPointTol);
  static HyperboloidPoint origin(int d);

  int dim() const { return static_cast<int>(x_.size()) - 1; }
  const Vector& coords() const { return x_; }
  double operator[](int i) const { return x_(i); }

 private:
  Vector x_;
};

/// (u, r) with p = n_u a_r xi_0.
struct HorospherVector {
  Vector u;
  double r = 1.0;

  HorospherVector() = default;
  HorospherVector(Vector u_, double r_);
  int dim() const { return static_cast<int>(u.size()) + 1; }
};

/// The pair (d, n) fixing G0 = S(O(1,n) x O(d-n)) inside SO_0(1,d).
class CycleConfig {
 public:
  CycleConfig(int d, int n);
  int d() const { return d_; }
  int n() const { return n_; }
  double rho() const { return 0.5 * (d_ - 1); }
  double rho0() const { return 0.5 * (n_ - 1); }

 private:
  int d_;
  int n_;
};

enum class Subgroup { G, K, A, N, M, G0, K0, AN0 };

const char* subgroup_name(Subgroup s);

/// Boost in the (0,1) plane: [[cosh x, sinh x], [sinh x, cosh x]] + identity.
LorentzMatrix make_boost(double x, int d);

/// n_u for u in R^{d-1}.
LorentzMatrix make_unipotent(const Vector& u);

/// diag(1, k) for k in SO(d) (or O(d) when improper blocks are wanted).
LorentzMatrix make_rotation(const Matrix& k);

bool check_membership(const LorentzMatrix& g, Subgroup s, const CycleConfig& cfg,
                      double tol = kGroupTol);
/// Overload for the subgroups that do not depend on (d, n). Throws for
/// G0, K0 and AN0.
bool check_membership(const LorentzMatrix& g, Subgroup s, double tol = kGroupTol);

/// Name of the first violated invariant, or empty when g is in G.
std::string describe_group_violation(const Matrix& g, double tol = kGroupTol);

struct CommutationReport {
  bool scaling = false;     // a_r n_u = n_{ur} a_r
  bool rotation = false;    // diag(1,1,k) n_u = n_{u k^T} diag(1,1,k)
  bool reflection = false;  // diag(1,-1,k') a_r = a_{1/r} diag(1,-1,k'), det k' = -1
  double scaling_err = 0.0;
  double rotation_err = 0.0;
  double reflection_err = 0.0;
  bool all() const { return scaling && rotation && reflection; }
};

/// k is a (d-1)x(d-1) rotation. The reflection check uses k' = k diag(-1,1,..,1).
CommutationReport commutation_identities(double r, const Vector& u, const Matrix& k,
                                         double tol = 1e-12);

/// SL(2,C) -> SO_0(1,3) through X -> m X m^* on
/// X = [[x0+x1, x2+i x3], [x2-i x3, x0-x1]].
LorentzMatrix spin_cover_so13(const Matrix2c& m);

}  // namespace hypertrace
