#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) integration. Only the nodes and
// weights come from Boost.Math; the subdivision strategy is the classic
// "bisect the interval with the largest error estimate" loop.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fracrenewal {

struct QuadOptions {
  double abs_tol = 1e-15;
  double rel_tol = 1e-13;
  int max_intervals = 2000;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  int intervals = 0;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[2 * 11];
  fv[0] = f(center);
  double k_sum = wk[0] * fv[0];
  double g_sum = 0.0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double fl = f(center - dx);
    const double fr = f(center + dx);
    k_sum += wk[i] * (fl + fr);
    // Gauss-10 nodes are the odd Kronrod nodes.
    if (i % 2 == 1) g_sum += wg[i / 2] * (fl + fr);
  }
  const double value = k_sum * half;
  // |K21 - G10| is used as is: the usual power-law rescaling of this estimate
  // is too optimistic for integrands with weak endpoint singularities.
  const double err = std::max(std::fabs((k_sum - g_sum) * half), 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(value));
  if (!std::isfinite(value)) return {a, b, value, std::numeric_limits<double>::infinity()};
  return {a, b, value, err};
}

}  // namespace detail

/// Integrates f over the finite interval [a, b].
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opts = {}) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk21(f, a, b));
  double total = heap.top().value;
  double error = heap.top().error;
  int count = 1;
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::fabs(total)) && count < opts.max_intervals) {
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const detail::Panel left = detail::gk21(f, worst.a, mid);
    const detail::Panel right = detail::gk21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-add from the panels to avoid drift from the incremental updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.abs_error = err;
  out.intervals = count;
  out.converged = std::isfinite(sum) && err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(sum));
  return out;
}

/// Integrates f over [a, +inf) through the map r = a + u/(1-u), u in [0, 1).
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadOptions& opts = {}) {
  auto mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double one_minus = 1.0 - u;
    const double r = a + u / one_minus;
    const double v = f(r);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

}  // namespace fracrenewal
