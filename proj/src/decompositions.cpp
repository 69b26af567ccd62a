#include "hypertrace/decompositions.hpp"

#include <cmath>

namespace hypertrace {

namespace {

void require_group(const LorentzMatrix& g, double tol) {
  const std::string why = describe_group_violation(g.matrix(), tol);
  if (!why.empty()) throw InvalidInput("decomposition input not in SO_0(1,d): " + why);
}

// p0 - p1 for an upper-sheet vector, without cancellation when p1 > 0.
double light_cone_gap(const Vector& p) {
  if (p(1) <= 0) return p(0) - p(1);
  const double rest = p.tail(p.size() - 2).squaredNorm();
  return (1.0 + rest) / (p(0) + p(1));
}

}  // namespace

double arccosh_plus(double x) { return std::acosh(std::max(1.0, x)); }

NakFactors iwasawa_nak(const LorentzMatrix& g, double tol) {
  require_group(g, tol);
  const int d = g.dim();
  const Vector p = g.matrix().col(0);
  const double s = 1.0 / light_cone_gap(p);
  NakFactors f;
  f.w = p.tail(d - 1) * s;
  f.x = std::log(s);
  f.n = make_unipotent(f.w);
  f.a = make_boost(f.x, d);
  f.k = make_boost(-f.x, d) * make_unipotent(-f.w) * g;
  return f;
}

AnkFactors iwasawa_ank(const LorentzMatrix& g, double tol) {
  NakFactors nak = iwasawa_nak(g, tol);
  AnkFactors f;
  f.r0 = nak.s();
  f.w0 = nak.w / f.r0;
  f.a = nak.a;
  f.n = make_unipotent(f.w0);
  f.k = std::move(nak.k);
  return f;
}

KakFactors cartan_kak(const LorentzMatrix& g, double tol) {
  require_group(g, tol);
  const int d = g.dim();
  const Vector y = g.matrix().col(0).tail(d);
  const double ny = y.norm();
  const double g00 = g(0, 0);
  KakFactors f;
  // asinh is the accurate branch near t = 0; both agree with cosh t = g00.
  f.t = g00 > 2.0 ? arccosh_plus(g00) : std::asinh(ny);

  Matrix rot = Matrix::Identity(d, d);
  if (f.t > 0 && ny > 0) {
    const Vector yhat = y / ny;
    Vector e1 = Vector::Zero(d);
    e1(0) = 1.0;
    Matrix h = Matrix::Identity(d, d);
    if ((yhat - e1).norm() <= 1e-12) {
      // already aligned
    } else {
      if ((yhat + e1).norm() <= 1e-12) {
        h(0, 0) = -1.0;
      } else {
        const Vector v = e1 - yhat;
        h -= 2.0 * v * v.transpose() / v.squaredNorm();
      }
      h.col(d - 1) *= -1.0;
      rot = h;
    }
  }
  f.k1 = make_rotation(rot);
  f.k2 = make_boost(-f.t, d) * f.k1.inverse() * g;
  return f;
}

double dist(const HyperboloidPoint& p, const HyperboloidPoint& q) {
  if (p.dim() != q.dim()) throw InvalidInput("points of different dimension");
  const double c = minkowski_pairing(p.coords(), q.coords());
  if (c > 2.0) return std::acosh(c);
  const Vector diff = p.coords() - q.coords();
  const double chord2 = -minkowski_pairing(diff, diff);
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord2)));
}

double dist_horospherical(const HorospherVector& a, const HorospherVector& b) {
  if (a.u.size() != b.u.size()) throw InvalidInput("horospherical vectors of different dimension");
  const double num = (a.u - b.u).squaredNorm() + (a.r - b.r) * (a.r - b.r);
  return 2.0 * std::asinh(0.5 * std::sqrt(num / (a.r * b.r)));
}

HorospherVector to_horospherical(const HyperboloidPoint& p) {
  const Vector& x = p.coords();
  const double r = 1.0 / light_cone_gap(x);
  return HorospherVector(x.tail(x.size() - 2) * r, r);
}

HyperboloidPoint from_horospherical(const HorospherVector& h) {
  const int d = h.dim();
  const double r = h.r;
  const double half = 0.5 * h.u.squaredNorm();
  Vector p(d + 1);
  p(0) = 0.5 * (r + 1.0 / r) + half / r;
  p(1) = 0.5 * (r - 1.0 / r) + half / r;
  p.tail(d - 1) = h.u / r;
  return HyperboloidPoint(std::move(p), LorentzMatrix::Unchecked{});
}

HyperboloidPoint apply_to_origin(const LorentzMatrix& g) {
  return HyperboloidPoint(g.matrix().col(0), LorentzMatrix::Unchecked{});
}

}  // namespace hypertrace
