#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "ginibre/common.hpp"

namespace ginibre::quad {

struct QuadSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_subdiv = std::size_t{1} << 16;
};

struct QuadResult {
  double value = 0;
  double err_est = 0;
};

namespace detail {

// Kronrod 21 / Gauss 10 abscissae and weights
inline constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452578, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

template <class F>
Segment gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * wgk[10], rg = 0, rabs = std::abs(rk);
  double fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * xgk[j];
    const double f1 = f(c - dx), f2 = f(c + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    rk += wgk[j] * (f1 + f2);
    rabs += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) rg += wg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * rk;
  double rasc = wgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) rasc += wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  const double value = rk * h;
  rabs *= std::abs(h);
  rasc *= std::abs(h);
  double err = std::abs((rk - rg) * h);
  if (rasc != 0 && err != 0) err = rasc * std::min(1.0, std::pow(200 * err / rasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (rabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * rabs, err);
  return {a, b, value, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod (21 point) with global bisection of the worst segment.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, const QuadSpec& spec = {}) {
  if (a == b) return {0, 0};
  std::vector<detail::Segment> heap;
  heap.push_back(detail::gk21(f, a, b));
  double value = heap[0].value, err = heap[0].err;
  auto done = [&] { return err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };
  while (!done()) {
    if (heap.size() >= spec.max_subdiv)
      throw ToleranceNotMet("integrate_1d: subdivision limit reached", value, err);
    std::pop_heap(heap.begin(), heap.end());
    const detail::Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b))
      throw ToleranceNotMet("integrate_1d: segment too small to split", value, err);
    const auto left = detail::gk21(f, worst.a, mid);
    const auto right = detail::gk21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    // resum occasionally so running totals do not drift
    if (heap.size() % 64 == 0) {
      value = err = 0;
      for (const auto& s : heap) {
        value += s.value;
        err += s.err;
      }
    }
  }
  value = err = 0;
  for (const auto& s : heap) {
    value += s.value;
    err += s.err;
  }
  return {value, err};
}

// integral over [a, inf) via t = a + u/(1-u)
template <class F>
QuadResult integrate_semi_inf(F&& f, double a, const QuadSpec& spec = {}) {
  auto g = [&](double u) {
    const double v = 1 - u;
    return f(a + u / v) / (v * v);
  };
  return integrate_1d(g, 0.0, 1.0, spec);
}

// nested adaptive rule over [ax,bx] x [ay,by]
template <class F>
QuadResult integrate_2d(F&& f, double ax, double bx, double ay, double by, const QuadSpec& spec = {}) {
  QuadSpec inner = spec;
  const double width = std::max(std::abs(bx - ax), 1e-300);
  inner.abs_tol = 0.1 * spec.abs_tol / width;
  inner.rel_tol = 0.1 * spec.rel_tol;
  double inner_err = 0;
  auto g = [&](double x) {
    auto r = integrate_1d([&](double y) { return f(x, y); }, ay, by, inner);
    inner_err = std::max(inner_err, r.err_est);
    return r.value;
  };
  auto r = integrate_1d(g, ax, bx, spec);
  r.err_est += width * inner_err;
  return r;
}

}  // namespace ginibre::quad
