// quadrature.hpp — globally adaptive Gauss–Kronrod (G10/K21) on finite and semi-infinite ranges
#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "mfgs/errors.hpp"

namespace mfgs::quad {

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  // Semi-infinite ranges are cut where the envelope drops below e^{-tail}·peak.
  double tail_cutoff_exponent = 40.0;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw ValidationError("QuadratureSettings: tolerances must be > 0");
    if (max_subdivisions < 1) throw ValidationError("QuadratureSettings: max_subdivisions must be >= 1");
    if (!(tail_cutoff_exponent > 0.0))
      throw ValidationError("QuadratureSettings: tail_cutoff_exponent must be > 0");
  }
};

template <class T>
struct QuadratureResult {
  T value;
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

template <class T>
T zero() {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, std::complex<double>>)
    return T{};
  else
    return T::Zero();
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.cwiseAbs().maxCoeff();
}

template <class T>
bool finite(const T& v) {
  if constexpr (std::is_arithmetic_v<T>)
    return std::isfinite(v);
  else if constexpr (std::is_same_v<T, std::complex<double>>)
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  else
    return v.allFinite();
}

template <class T>
std::complex<double> as_complex(const T& v) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, std::complex<double>>)
    return std::complex<double>(v);
  else
    return v(0);
}

// Kronrod abscissae (descending) and weights; Gauss weights pair with odd indices.
inline constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077834416743813, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
};

// One 21-point Kronrod panel with the QUADPACK error heuristic.
template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fv[21];
  fv[10] = f(c);
  for (int j = 0; j < 10; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[20 - j] = f(c + h * kXgk[j]);
  }
  T rk = kWgk[10] * fv[10];
  T rg = zero<T>();
  double resabs = kWgk[10] * magnitude(fv[10]);
  for (int j = 0; j < 10; ++j) {
    const T pair = fv[j] + fv[20 - j];
    rk = rk + kWgk[j] * pair;
    if (j % 2 == 1) rg = rg + kWg[j / 2] * pair;
    resabs += kWgk[j] * (magnitude(fv[j]) + magnitude(fv[20 - j]));
  }
  const T mean = 0.5 * rk;
  double resasc = kWgk[10] * magnitude(T(fv[10] - mean));
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (magnitude(T(fv[j] - mean)) + magnitude(T(fv[20 - j] - mean)));

  const double ah = std::abs(h);
  resabs *= ah;
  resasc *= ah;
  double err = magnitude(T((rk - rg) * h));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  for (const T& v : fv)
    if (!finite(v)) throw NumericalError("quadrature: integrand returned a non-finite value");
  return {a, b, T(rk * h), err};
}

// Globally adaptive bisection over the panels defined by sorted points.
template <class T, class F>
QuadratureResult<T> adaptive(F& f, const std::vector<double>& pts, const QuadratureSettings& s) {
  std::vector<Panel<T>> panels;
  panels.reserve(pts.size() + 2 * static_cast<std::size_t>(s.max_subdivisions));
  long evals = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    panels.push_back(gk21<T>(f, pts[i], pts[i + 1]));
    evals += 21;
  }
  auto worse = [&panels](std::size_t x, std::size_t y) {
    if (panels[x].error != panels[y].error) return panels[x].error < panels[y].error;
    return x > y;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

  auto totals = [&panels]() {
    T v = zero<T>();
    double e = 0.0;
    for (const auto& p : panels) {
      v = v + p.value;
      e += p.error;
    }
    return std::pair<T, double>(v, e);
  };

  auto [value, error] = totals();
  long live = static_cast<long>(panels.size());
  while (error > std::max(s.abs_tol, s.rel_tol * magnitude(value))) {
    if (heap.empty() || live >= s.max_subdivisions)
      throw QuadratureError("quadrature: tolerance not reached within subdivision limit",
                            as_complex(value), error);
    const std::size_t k = heap.top();
    heap.pop();
    const Panel<T> p = panels[k];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) continue;  // unsplittable; keep its contribution
    Panel<T> left = gk21<T>(f, p.a, mid);
    Panel<T> right = gk21<T>(f, mid, p.b);
    evals += 42;
    value = value - p.value + left.value + right.value;
    error = error - p.error + left.error + right.error;
    panels[k] = left;
    panels.push_back(right);
    heap.push(k);
    heap.push(panels.size() - 1);
    ++live;
    if ((live & 63) == 0) std::tie(value, error) = totals();  // limit drift
  }
  std::tie(value, error) = totals();
  return {value, error, evals};
}

inline std::vector<double> panel_points(double a, double b, std::span<const double> breaks) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double x : breaks)
    if (x > a && x < b) inner.push_back(x);
  std::sort(inner.begin(), inner.end());
  for (double x : inner)
    if (x > pts.back()) pts.push_back(x);
  pts.push_back(b);
  return pts;
}

}  // namespace detail

// ∫_a^b f. Breakpoints inside (a, b) seed the initial partition.
template <class F>
auto integrate_finite(F&& f, double a, double b, const QuadratureSettings& s = {},
                      std::span<const double> breakpoints = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  s.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("integrate_finite: non-finite limit");
  if (a > b) throw ValidationError("integrate_finite: requires a <= b");
  if (a == b) return {detail::zero<T>(), 0.0, 0};
  return detail::adaptive<T>(f, detail::panel_points(a, b, breakpoints), s);
}

// ∫_a^∞ f, with |f(x)| ≤ envelope(x) monotone for large x. The range is cut at
// the first doubling point where the envelope is below e^{-tail}·peak, then
// mapped through x = a + scale·t/(1−t); the envelope's remaining integral is
// added to the error estimate.
template <class F, class E>
auto integrate_semi_infinite(F&& f, double a, E&& envelope, const QuadratureSettings& s = {},
                             double scale = 1.0, std::span<const double> breakpoints = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  s.validate();
  if (!std::isfinite(a)) throw ValidationError("integrate_semi_infinite: non-finite lower limit");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ValidationError("integrate_semi_infinite: scale must be positive");

  long evals = 0;
  double peak = 0.0;
  for (int j = -24; j <= 12; ++j) {
    peak = std::max(peak, detail::magnitude(f(a + scale * std::ldexp(1.0, j))));
    ++evals;
  }
  for (double x : breakpoints)
    if (x > a) {
      peak = std::max(peak, detail::magnitude(f(x)));
      ++evals;
    }
  if (!std::isfinite(peak)) throw NumericalError("integrate_semi_infinite: integrand not finite");
  if (peak == 0.0) return {detail::zero<T>(), 0.0, evals};

  const double floor = std::exp(-s.tail_cutoff_exponent) * peak;
  double span = scale;
  int doublings = 0;
  while (!(envelope(a + span) < floor)) {
    span *= 2.0;
    if (++doublings > 1000 || !std::isfinite(span))
      throw NumericalError("integrate_semi_infinite: envelope never reaches the tail cutoff");
  }

  auto mapped = [&](double t) -> T {
    const double om = 1.0 - t;
    return T(f(a + scale * t / om) * (scale / (om * om)));
  };
  const double t_end = span / (span + scale);
  std::vector<double> tb;
  for (double x : breakpoints)
    if (x > a && x < a + span) tb.push_back((x - a) / (x - a + scale));
  auto res = detail::adaptive<T>(mapped, detail::panel_points(0.0, t_end, tb), s);

  auto tail = [&](double t) {
    const double om = 1.0 - t;
    return envelope(a + scale * t / om) * (scale / (om * om));
  };
  const auto rest = detail::gk21<double>(tail, t_end, 1.0);
  res.error_estimate += std::abs(rest.value) + rest.error;
  res.evaluations += evals + 21;
  return res;
}

}  // namespace mfgs::quad
