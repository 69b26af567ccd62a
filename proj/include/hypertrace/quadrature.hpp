#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

namespace hypertrace::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_panels = 2000;
};

template <class T>
struct Result {
  T value{};
  double abs_error = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule; index 0 is the
// centre, odd indices are the Gauss nodes.
inline constexpr std::array<double, 11> kNodes = {
    0.0,
    0.14887433898163122,
    0.2943928627014602,
    0.43339539412924721,
    0.56275713466860466,
    0.67940956829902444,
    0.7808177265864169,
    0.86506336668898454,
    0.93015749135570824,
    0.97390652851717174,
    0.99565716302580809};
inline constexpr std::array<double, 11> kKronrod = {
    0.1494455540029169,
    0.14773910490133849,
    0.14277593857706009,
    0.13470921731147334,
    0.12349197626206584,
    0.10938715880229764,
    0.093125454583697601,
    0.075039674810919957,
    0.054755896574351995,
    0.032558162307964725,
    0.011694638867371874};
inline constexpr std::array<double, 5> kGauss = {
    0.29552422471475287,
    0.26926671930999635,
    0.21908636251598204,
    0.14945134915058059,
    0.066671344308688138};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
bool finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
};

template <class T, class F>
Panel<T> rule(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kKronrod[0];
  T gauss{};
  for (int i = 1; i <= 10; ++i) {
    const double dx = h * kNodes[i];
    const T sum = f(c - dx) + f(c + dx);
    kron += sum * kKronrod[i];
    if (i % 2 == 1) gauss += sum * kGauss[i / 2];
  }
  return {a, b, kron * h, magnitude(T((kron - gauss) * h))};
}

}  // namespace detail

/// Adaptive 21-point Gauss-Kronrod on [a, b].
///
/// Always refines the panel with the largest error estimate (ties broken by
/// the left endpoint), so the subdivision and the final left-to-right sum are
/// fully deterministic.
template <class F>
auto gauss_kronrod(F&& f, double a, double b, const Options& opt = {})
    -> Result<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  using P = detail::Panel<T>;
  Result<T> res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::vector<P> panels;
  panels.reserve(64);
  auto worse = [&panels](int i, int j) {
    if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
    return panels[i].a > panels[j].a;
  };
  std::priority_queue<int, std::vector<int>, decltype(worse)> heap(worse);

  panels.push_back(detail::rule<T>(f, a, b));
  heap.push(0);
  T total = panels[0].value;
  double err = panels[0].err;
  bool splittable = true;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
    if (err <= target || !detail::finite(total)) break;
    if (static_cast<int>(panels.size()) + 1 >= opt.max_panels) break;
    const int worst = heap.top();
    const P p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      splittable = false;
      break;
    }
    heap.pop();
    P left = detail::rule<T>(f, p.a, mid);
    P right = detail::rule<T>(f, mid, p.b);
    total += left.value + right.value - p.value;
    err += left.err + right.err - p.err;
    panels[worst] = left;
    heap.push(worst);
    panels.push_back(right);
    heap.push(static_cast<int>(panels.size()) - 1);
  }

  std::vector<int> order(panels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return panels[i].a < panels[j].a; });
  T sum{};
  double esum = 0.0;
  for (int i : order) {
    sum += panels[i].value;
    esum += panels[i].err;
  }
  res.value = sum;
  res.abs_error = esum;
  res.panels = static_cast<int>(panels.size());
  res.converged = splittable && detail::finite(sum) &&
                  esum <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(sum));
  return res;
}

/// [a, inf) through x = a + t/(1-t).
template <class F>
auto integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  auto g = [&f, a](double t) -> T {
    const double one_minus = 1.0 - t;
    const T v = f(a + t / one_minus);
    if (v == T{}) return T{};
    return v / (one_minus * one_minus);
  };
  return gauss_kronrod(g, 0.0, 1.0, opt);
}

/// (-inf, inf) through x = t/(1-t^2).
template <class F>
auto integrate_real_line(F&& f, const Options& opt = {}) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  auto g = [&f](double t) -> T {
    const double q = 1.0 - t * t;
    const T v = f(t / q);
    if (v == T{}) return T{};
    return v * ((1.0 + t * t) / (q * q));
  };
  return gauss_kronrod(g, -1.0, 1.0, opt);
}

}  // namespace hypertrace::quad
