#include "hypertrace/optimize.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numeric>

namespace hypertrace {

namespace {

std::vector<double> snapshot(const Vector& x, double f) {
  std::vector<double> row(x.data(), x.data() + x.size());
  row.push_back(f);
  return row;
}

}  // namespace

MinimizeResult coordinate_descent(const Objective& f, Vector x0, double bracket, int max_sweeps,
                                  double tol) {
  MinimizeResult res;
  res.x = std::move(x0);
  res.f = f(res.x);
  res.trace.push_back(snapshot(res.x, res.f));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = res.f;
    for (int i = 0; i < res.x.size(); ++i) {
      Vector probe = res.x;
      auto line = [&](double xi) {
        probe(i) = xi;
        return f(probe);
      };
      double h = bracket;
      for (int widen = 0; widen < 40; ++widen) {
        const double lo = res.x(i) - h;
        const double hi = res.x(i) + h;
        const auto [xm, fm] = boost::math::tools::brent_find_minima(line, lo, hi, 52);
        const bool on_edge = (xm - lo) < 1e-3 * h || (hi - xm) < 1e-3 * h;
        if (fm < res.f) {
          res.x(i) = xm;
          res.f = fm;
        }
        if (!on_edge) break;
        h *= 4.0;
      }
    }
    ++res.iterations;
    res.trace.push_back(snapshot(res.x, res.f));
    if (before - res.f <= tol * std::max(1.0, std::abs(res.f))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

MinimizeResult nelder_mead(const Objective& f, Vector x0, double step, int max_iter, double tol) {
  const int k = static_cast<int>(x0.size());
  std::vector<Vector> pts(k + 1, x0);
  std::vector<double> vals(k + 1);
  for (int i = 0; i < k; ++i) pts[i + 1](i) += step;
  for (int i = 0; i <= k; ++i) vals[i] = f(pts[i]);

  MinimizeResult res;
  std::vector<int> idx(k + 1);
  for (int it = 0; it < max_iter; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = idx.front();
    const int worst = idx.back();
    const int second = idx[k - 1];
    res.trace.push_back(snapshot(pts[best], vals[best]));
    res.iterations = it;
    if (vals[worst] - vals[best] <= tol * std::max(1.0, std::abs(vals[best]))) {
      res.converged = true;
      break;
    }
    Vector centroid = Vector::Zero(k);
    for (int i = 0; i <= k; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= k;

    const Vector xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < vals[best]) {
      const Vector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector xc = outside ? Vector(centroid + 0.5 * (xr - centroid))
                              : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= k; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.f = vals[best];
  return res;
}

}  // namespace hypertrace
