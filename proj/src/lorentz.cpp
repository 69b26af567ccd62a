#include "hypertrace/lorentz.hpp"

#include <cmath>
#include <sstream>

namespace hypertrace {

Matrix minkowski_form(int d) {
  Matrix j = -Matrix::Identity(d + 1, d + 1);
  j(0, 0) = 1.0;
  return j;
}

double minkowski_pairing(const Vector& x, const Vector& y) {
  return x(0) * y(0) - x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double form_defect_of(const Matrix& g) {
  const int d = static_cast<int>(g.rows()) - 1;
  const Matrix j = minkowski_form(d);
  return max_abs(g.transpose() * j * g - j);
}

double scale_of(const Matrix& g) { return std::max(1.0, max_abs(g)); }

}  // namespace

std::string describe_group_violation(const Matrix& g, double tol) {
  if (g.rows() != g.cols() || g.rows() < 3) return "matrix must be square of size d+1 >= 3";
  if (!g.allFinite()) return "non-finite entry";
  const double s = scale_of(g);
  std::ostringstream out;
  const double defect = form_defect_of(g);
  if (defect > tol * s * s) {
    out << "g^T J g != J (defect " << defect << ")";
    return out.str();
  }
  const double det = g.determinant();
  if (std::abs(det - 1.0) > tol * s * s) {
    out << "det(g) != +1 (det " << det << ")";
    return out.str();
  }
  if (g(0, 0) < 1.0 - tol) {
    out << "g00 < 1, upper sheet not preserved (g00 " << g(0, 0) << ")";
    return out.str();
  }
  return {};
}

LorentzMatrix LorentzMatrix::from_matrix(const Matrix& m, double tol) {
  const std::string why = describe_group_violation(m, tol);
  if (!why.empty()) throw InvalidInput("not in SO_0(1,d): " + why);
  return LorentzMatrix(m, Unchecked{});
}

LorentzMatrix LorentzMatrix::identity(int d) {
  if (d < 2) throw InvalidInput("dimension d must be >= 2");
  return LorentzMatrix(Matrix::Identity(d + 1, d + 1), Unchecked{});
}

LorentzMatrix LorentzMatrix::operator*(const LorentzMatrix& o) const {
  if (o.dim() != dim()) throw InvalidInput("dimension mismatch in product");
  return LorentzMatrix(m_ * o.m_, Unchecked{});
}

LorentzMatrix LorentzMatrix::inverse() const {
  Matrix inv = m_.transpose();
  inv.row(0).tail(inv.cols() - 1) *= -1.0;
  inv.col(0).tail(inv.rows() - 1) *= -1.0;
  return LorentzMatrix(std::move(inv), Unchecked{});
}

double LorentzMatrix::form_defect() const { return form_defect_of(m_); }

double LorentzMatrix::scale() const { return scale_of(m_); }

HyperboloidPoint HyperboloidPoint::from_coords(const Vector& x, double tol) {
  if (x.size() < 3) throw InvalidInput("point needs d+1 >= 3 coordinates");
  if (!x.allFinite()) throw InvalidInput("non-finite point coordinate");
  if (x(0) <= 0) throw InvalidInput("point not on the upper sheet (x0 <= 0)");
  const double q = minkowski_pairing(x, x);
  if (std::abs(q - 1.0) > tol * std::max(1.0, x(0) * x(0)))
    throw InvalidInput("point not on the hyperboloid x0^2 - |x|^2 = 1");
  return HyperboloidPoint(x, LorentzMatrix::Unchecked{});
}

HyperboloidPoint HyperboloidPoint::origin(int d) {
  Vector x = Vector::Zero(d + 1);
  x(0) = 1.0;
  return HyperboloidPoint(std::move(x), LorentzMatrix::Unchecked{});
}

HorospherVector::HorospherVector(Vector u_, double r_) : u(std::move(u_)), r(r_) {
  if (!(r > 0) || !std::isfinite(r)) throw InvalidInput("horospherical r must be positive");
  if (u.size() < 1) throw InvalidInput("horospherical u must have d-1 >= 1 components");
}

CycleConfig::CycleConfig(int d, int n) : d_(d), n_(n) {
  if (d < 3) throw InvalidInput("cycle configuration needs d >= 3");
  if (n < 2 || n > d - 1) throw InvalidInput("cycle configuration needs 2 <= n <= d-1");
}

const char* subgroup_name(Subgroup s) {
  switch (s) {
    case Subgroup::G: return "G";
    case Subgroup::K: return "K";
    case Subgroup::A: return "A";
    case Subgroup::N: return "N";
    case Subgroup::M: return "M";
    case Subgroup::G0: return "G0";
    case Subgroup::K0: return "K0";
    case Subgroup::AN0: return "AN0";
  }
  return "?";
}

LorentzMatrix make_boost(double x, int d) {
  if (d < 2) throw InvalidInput("make_boost needs d >= 2");
  Matrix m = Matrix::Identity(d + 1, d + 1);
  m(0, 0) = m(1, 1) = std::cosh(x);
  m(0, 1) = m(1, 0) = std::sinh(x);
  return LorentzMatrix(std::move(m), LorentzMatrix::Unchecked{});
}

LorentzMatrix make_unipotent(const Vector& u) {
  const int d = static_cast<int>(u.size()) + 1;
  if (d < 2) throw InvalidInput("make_unipotent needs u in R^{d-1}, d >= 2");
  const double h = 0.5 * u.squaredNorm();
  Matrix m = Matrix::Identity(d + 1, d + 1);
  m(0, 0) = 1.0 + h;
  m(0, 1) = -h;
  m(1, 0) = h;
  m(1, 1) = 1.0 - h;
  for (int i = 0; i < d - 1; ++i) {
    m(0, i + 2) = u(i);
    m(1, i + 2) = u(i);
    m(i + 2, 0) = u(i);
    m(i + 2, 1) = -u(i);
  }
  return LorentzMatrix(std::move(m), LorentzMatrix::Unchecked{});
}

LorentzMatrix make_rotation(const Matrix& k) {
  const int d = static_cast<int>(k.rows());
  Matrix m = Matrix::Identity(d + 1, d + 1);
  m.bottomRightCorner(d, d) = k;
  return LorentzMatrix(std::move(m), LorentzMatrix::Unchecked{});
}

namespace {

bool in_g(const Matrix& g, double tol) { return describe_group_violation(g, tol).empty(); }

bool in_k(const Matrix& g, double tol) {
  const int d = static_cast<int>(g.rows()) - 1;
  const double lin = tol * scale_of(g);
  if (std::abs(g(0, 0) - 1.0) > lin) return false;
  for (int i = 1; i <= d; ++i)
    if (std::abs(g(0, i)) > lin || std::abs(g(i, 0)) > lin) return false;
  return true;
}

bool block_diagonal(const Matrix& g, int n, double tol) {
  const int d = static_cast<int>(g.rows()) - 1;
  const double lin = tol * scale_of(g);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      if ((i <= n) != (j <= n) && std::abs(g(i, j)) > lin) return false;
  return true;
}

// Deviation of g from n_w a_s where (w, s) are read off g xi_0.
bool in_an0(const Matrix& g, int n, double tol) {
  const int d = static_cast<int>(g.rows()) - 1;
  const Vector p = g.col(0);
  const double s = 1.0 / (p(0) - p(1));
  const Vector w = p.tail(d - 1) * s;
  const double lin = tol * scale_of(g);
  for (int i = n - 1; i < d - 1; ++i)
    if (std::abs(w(i)) > lin) return false;
  const Matrix na = (make_unipotent(w) * make_boost(std::log(s), d)).matrix();
  return max_abs(na - g) <= lin;
}

}  // namespace

bool check_membership(const LorentzMatrix& g, Subgroup s, const CycleConfig& cfg, double tol) {
  const Matrix& m = g.matrix();
  if (g.dim() != cfg.d()) throw InvalidInput("matrix dimension does not match cycle configuration");
  switch (s) {
    case Subgroup::G0: return in_g(m, tol) && block_diagonal(m, cfg.n(), tol);
    case Subgroup::K0: return in_g(m, tol) && in_k(m, tol) && block_diagonal(m, cfg.n(), tol);
    case Subgroup::AN0: return in_g(m, tol) && in_an0(m, cfg.n(), tol);
    default: return check_membership(g, s, tol);
  }
}

bool check_membership(const LorentzMatrix& g, Subgroup s, double tol) {
  const Matrix& m = g.matrix();
  const int d = g.dim();
  if (!in_g(m, tol)) return false;
  const double lin = tol * g.scale();
  switch (s) {
    case Subgroup::G: return true;
    case Subgroup::K: return in_k(m, tol);
    case Subgroup::A: return max_abs(make_boost(std::asinh(m(1, 0)), d).matrix() - m) <= lin;
    case Subgroup::N: {
      Vector u(d - 1);
      for (int i = 0; i < d - 1; ++i) u(i) = m(i + 2, 0);
      return max_abs(make_unipotent(u).matrix() - m) <= lin;
    }
    case Subgroup::M: {
      if (!in_k(m, tol) || std::abs(m(1, 1) - 1.0) > lin) return false;
      for (int i = 2; i <= d; ++i)
        if (std::abs(m(1, i)) > lin || std::abs(m(i, 1)) > lin) return false;
      return true;
    }
    default:
      throw InvalidInput(std::string("membership in ") + subgroup_name(s) +
                         " needs a cycle configuration");
  }
}

CommutationReport commutation_identities(double r, const Vector& u, const Matrix& k, double tol) {
  if (!(r > 0)) throw InvalidInput("commutation check needs r > 0");
  const int d = static_cast<int>(u.size()) + 1;
  if (k.rows() != d - 1 || k.cols() != d - 1)
    throw InvalidInput("rotation block must be (d-1)x(d-1)");
  auto rel = [](const Matrix& a, const Matrix& b) {
    return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
  };

  CommutationReport rep;
  const LorentzMatrix ar = make_boost(std::log(r), d);
  rep.scaling_err = rel((ar * make_unipotent(u)).matrix(), (make_unipotent(u * r) * ar).matrix());

  Matrix blk = Matrix::Identity(d, d);
  blk.bottomRightCorner(d - 1, d - 1) = k;
  const LorentzMatrix rk = make_rotation(blk);
  rep.rotation_err =
      rel((rk * make_unipotent(u)).matrix(), (make_unipotent(k * u) * rk).matrix());

  Matrix kp = k;
  kp.col(0) *= -1.0;
  Matrix refl = Matrix::Identity(d, d);
  refl(0, 0) = -1.0;
  refl.bottomRightCorner(d - 1, d - 1) = kp;
  const LorentzMatrix rr = make_rotation(refl);
  rep.reflection_err =
      rel((rr * ar).matrix(), (make_boost(-std::log(r), d) * rr).matrix());

  rep.scaling = rep.scaling_err <= tol;
  rep.rotation = rep.rotation_err <= tol;
  rep.reflection = rep.reflection_err <= tol;
  return rep;
}

LorentzMatrix spin_cover_so13(const Matrix2c& m) {
  using C = std::complex<double>;
  if (!m.allFinite()) throw InvalidInput("non-finite SL(2,C) entry");
  if (std::abs(m.determinant() - C(1.0)) > 1e-10)
    throw InvalidInput("spin cover needs det m = 1");
  const C i(0.0, 1.0);
  Matrix2c sigma[4];
  sigma[0] << 1, 0, 0, 1;
  sigma[1] << 1, 0, 0, -1;
  sigma[2] << 0, 1, 1, 0;
  sigma[3] << 0, i, -i, 0;
  Matrix out(4, 4);
  const Matrix2c mh = m.adjoint();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      out(mu, nu) = 0.5 * (sigma[mu] * m * sigma[nu] * mh).trace().real();
  return LorentzMatrix(std::move(out), LorentzMatrix::Unchecked{});
}

}  // namespace hypertrace
