#pragma once

#include <cmath>

#include "hypertrace/lorentz.hpp"

namespace hypertrace {

/// g = n_w a_x k with e^x = s.
struct NakFactors {
  Vector w;
  double x = 0.0;
  LorentzMatrix n;
  LorentzMatrix a;
  LorentzMatrix k;
  double s() const { return std::exp(x); }
};

/// g = a_{r0} n_{w0} k.
struct AnkFactors {
  double r0 = 1.0;
  Vector w0;
  LorentzMatrix a;
  LorentzMatrix n;
  LorentzMatrix k;
};

/// g = k1 a_t k2, t >= 0.
struct KakFactors {
  LorentzMatrix k1;
  double t = 0.0;
  LorentzMatrix k2;
};

NakFactors iwasawa_nak(const LorentzMatrix& g, double tol = kGroupTol);
AnkFactors iwasawa_ank(const LorentzMatrix& g, double tol = kGroupTol);
KakFactors cartan_kak(const LorentzMatrix& g, double tol = kGroupTol);

/// Hyperbolic distance, normalized so dist(a_t o, o) = |t|.
double dist(const HyperboloidPoint& p, const HyperboloidPoint& q);

/// arccosh^+[(|u-v|^2 + r^2 + t^2) / (2 r t)], evaluated without cancellation.
double dist_horospherical(const HorospherVector& a, const HorospherVector& b);

HorospherVector to_horospherical(const HyperboloidPoint& p);
HyperboloidPoint from_horospherical(const HorospherVector& h);

/// g xi_0 as a point.
HyperboloidPoint apply_to_origin(const LorentzMatrix& g);

/// arccosh clamped below at 1.
double arccosh_plus(double x);

}  // namespace hypertrace
