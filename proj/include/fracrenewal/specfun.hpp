#pragma once

// Scalar kernels: Mittag-Leffler function on the negative axis and its
// derivatives, Wright function with negative first parameter, the
// M-function, and erfc with its repeated integrals.

#include <fracrenewal/detail/series.hpp>
#include <fracrenewal/errors.hpp>
#include <fracrenewal/quadrature.hpp>

#include <complex>
#include <cmath>
#include <string>
#include <vector>

namespace fracrenewal {

/// Fractional order, 0 < beta <= 1.
class OrderParam {
 public:
  OrderParam(double beta) : beta_(beta) {  // NOLINT(google-explicit-constructor)
    if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("order parameter must lie in (0, 1], got " + std::to_string(beta));
  }
  double value() const { return beta_; }
  bool is_one() const { return beta_ == 1.0; }
  operator double() const { return beta_; }  // NOLINT(google-explicit-constructor)

 private:
  double beta_;
};

struct EvalPolicy {
  double rel_tol = 1e-12;
  int max_terms = 500;
  int highprec_digits = 50;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
    if (max_terms < 1) throw DomainError("max_terms must be at least 1");
    if (highprec_digits < 1) throw DomainError("highprec_digits must be at least 1");
  }
  detail::SeriesPolicy series() const { return {rel_tol, max_terms, highprec_digits}; }
};

// ---------------------------------------------------------------------------
// erfc family

/// exp(z^2) erfc(z).
inline double erfcx(double z) {
  if (z < 0.0) {
    const double hi = z * z;
    const double lo = std::fma(z, z, -hi);
    return 2.0 * std::exp(hi) * (1.0 + lo) - erfcx(-z);
  }
  if (z < 10.0) {
    const double hi = z * z;
    const double lo = std::fma(z, z, -hi);
    return std::exp(hi) * (1.0 + lo) * std::erfc(z);
  }
  // Laplace continued fraction, evaluated from the bottom up
  double f = z;
  for (int j = 60; j >= 1; --j) f = z + 0.5 * j / f;
  return 1.0 / (std::sqrt(M_PI) * f);
}

namespace detail {

inline constexpr double kTwoOverSqrtPi = 1.1283791670955126;

// S_n(z) = exp(z^2) I^n erfc(z) for z >= 0, n >= -1.
inline double erfc_repeated_scaled_nonneg(int n, double z) {
  if (n == -1) return kTwoOverSqrtPi;
  if (n == 0) return erfcx(z);
  if (z <= 1.0) {
    double prev = kTwoOverSqrtPi;
    double cur = erfcx(z);
    for (int m = 1; m <= n; ++m) {
      const double next = (prev - 2.0 * z * cur) / (2.0 * m);
      prev = cur;
      cur = next;
    }
    return cur;
  }
  // Miller: the recurrence run downward from a far start index converges to
  // the minimal solution, normalised by the known value at n = -1.
  auto run = [&](int start) {
    double a = 0.0;  // y_m
    double b = 1.0;  // y_(m-1)
    double yn = 0.0;
    for (int m = start + 1; m >= 1; --m) {
      const double c = 2.0 * m * a + 2.0 * z * b;  // y_(m-2)
      a = b;
      b = c;
      if (m - 2 == n) yn = c;
      if (std::fabs(b) > 1e250) {
        a *= 1e-250;
        b *= 1e-250;
        yn *= 1e-250;
      }
    }
    return yn * kTwoOverSqrtPi / b;
  };
  int start = std::max(2 * n, n + 40);
  double last = run(start);
  for (int iter = 0; iter < 30; ++iter) {
    start *= 2;
    const double next = run(start);
    if (std::fabs(next - last) <= 2.0 * kEps * std::fabs(next)) return next;
    last = next;
  }
  return last;
}

}  // namespace detail

/// exp(z^2) I^n erfc(z), for z >= 0.
inline double erfc_repeated_scaled(int n, double z) {
  if (n < -1) throw DomainError("erfc_repeated: n must be >= -1");
  if (z < 0.0) throw DomainError("erfc_repeated_scaled: z must be >= 0");
  return detail::erfc_repeated_scaled_nonneg(n, z);
}

/// I^n erfc(z), the n-fold repeated integral of erfc; I^{-1} erfc = 2 exp(-z^2)/sqrt(pi).
inline double erfc_repeated(int n, double z) {
  if (n < -1) throw DomainError("erfc_repeated: n must be >= -1");
  if (n == -1) return detail::kTwoOverSqrtPi * std::exp(-z * z);
  if (n == 0) return std::erfc(z);
  if (z >= 0.0) {
    const double s = detail::erfc_repeated_scaled_nonneg(n, z);
    const double hi = z * z;
    const double lo = std::fma(z, z, -hi);
    return s * std::exp(-hi) * (1.0 - lo);
  }
  // negative argument: I^n erfc grows with n and the upward recurrence is stable
  double prev = detail::kTwoOverSqrtPi * std::exp(-z * z);
  double cur = std::erfc(z);
  for (int m = 1; m <= n; ++m) {
    const double next = (prev - 2.0 * z * cur) / (2.0 * m);
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) throw RangeError("erfc_repeated overflow");
  return cur;
}

// ---------------------------------------------------------------------------
// Mittag-Leffler

namespace detail {

struct Approx {
  double value = 0.0;
  double error = INFINITY;
  bool ok = false;
};

// Algebraic expansion of E^(k)(-x) for large x, truncated before its smallest
// term, plus a bound on the exponentially small part.
inline Approx ml_asymptotic(double beta, int k, double x, double rel_tol) {
  Approx out;
  if (x <= 1.0) return out;
  const double lx = std::log(x);
  CompensatedSum acc;
  double prev_env = INFINITY;
  double min_env = INFINITY;
  for (int j = 1; j <= 400; ++j) {
    const double arg = 1.0 - beta * j;
    const double poch = log_gamma_pos(j + static_cast<double>(k)) - log_gamma_pos(static_cast<double>(j));
    const double log_env = poch - (j + k) * lx + log_rgamma_bound(arg);
    if (log_env > prev_env) break;
    prev_env = log_env;
    min_env = log_env;
    if (is_pole(arg)) continue;
    int sg = 0;
    const double lg = log_abs_rgamma(arg, sg);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * sg * std::exp(poch - (j + k) * lx + lg);
  }
  // the truncation error is of the order of the first omitted term, bounded
  // by the envelope at the minimum
  double err = std::exp(min_env);
  const double cpi = std::cos(M_PI / beta);
  const double c = cpi < 0.0 ? std::min(1.0, -cpi) : 1.0;
  const double xr = std::pow(x, 1.0 / beta);
  double expo = std::log(2.0 / beta) - c * xr;
  if (k > 0) expo += k * std::log(std::max(1.0, xr / (beta * x)));
  err += std::exp(expo);
  out.value = acc.value();
  out.error = err;
  out.ok = out.value != 0.0 && err <= 0.5 * rel_tol * std::fabs(out.value);
  return out;
}

// Integral representation over s in (0, inf):
//   E(-x)  = sin(beta pi)/(beta pi) int exp(-(s x)^(1/beta)) / (s^2 + 2 s cos(beta pi) + 1) ds
//   E'(-x) = sin(beta pi)/(beta^2 pi) x^((1-beta)/beta) int s^(1/beta) exp(...) / (...) ds
inline double ml_integral(double beta, int k, double x, double rel_tol) {
  const double sb = std::sin(beta * M_PI);
  const double cb = std::cos(beta * M_PI);
  const double ib = 1.0 / beta;
  auto f = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double e = std::exp(-std::pow(s * x, ib));
    if (e == 0.0) return 0.0;
    const double den = s * s + 2.0 * s * cb + 1.0;
    return (k == 0 ? 1.0 : std::pow(s, ib)) * e / den;
  };
  QuadOptions o;
  o.rel_tol = std::max(rel_tol * 0.05, 1e-15);
  o.abs_tol = 0.0;
  o.max_intervals = 4000;
  const double b1 = std::min(1.0, 1.0 / x);
  const double b2 = std::max(1.0, 1.0 / x);
  double total = 0.0;
  double err = 0.0;
  for (auto [lo, hi] : {std::pair{0.0, b1}, std::pair{b1, b2}}) {
    if (hi > lo) {
      const QuadResult r = integrate(f, lo, hi, o);
      total += r.value;
      err += r.abs_error;
    }
  }
  const QuadResult tail = integrate_to_infinity(f, b2, o);
  total += tail.value;
  err += tail.abs_error;
  if (!(err <= rel_tol * std::fabs(total))) throw EvaluationError("quadrature did not converge", beta, x);
  double scale = sb / (beta * M_PI);
  if (k == 1) scale *= std::pow(x, (1.0 - beta) / beta) / beta;
  return scale * total;
}

// Any k, from the collapsed Hankel contour (r = t rho, t = x^(1/beta)):
//   E^(k)(-x) = k!/(pi x^k) int exp(-rho t) rho^(beta-1) Im[e^(i pi beta) / (rho^beta e^(i pi beta) + 1)^(k+1)] drho
// The integrand changes sign for k >= 1; ok is false when the quadrature
// cannot certify rel_tol.
inline Approx ml_integral_hankel(double beta, int k, double x, double rel_tol) {
  Approx out;
  const double t = std::pow(x, 1.0 / beta);
  const std::complex<double> w = std::polar(1.0, M_PI * beta);
  auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const double e = std::exp(-rho * t);
    if (e == 0.0) return 0.0;
    const std::complex<double> den = std::pow(std::pow(rho, beta) * w + 1.0, k + 1);
    return e * std::pow(rho, beta - 1.0) * (w / den).imag();
  };
  QuadOptions o;
  o.rel_tol = std::max(rel_tol * 0.05, 1e-15);
  o.abs_tol = 0.0;
  o.max_intervals = 4000;
  const double b1 = 1.0 / t;
  const QuadResult head = integrate(f, 0.0, b1, o);
  const QuadResult tail = integrate_to_infinity(f, b1, o);
  const double total = head.value + tail.value;
  const double scale = std::exp(log_gamma_pos(k + 1.0) - k * std::log(x)) / M_PI;
  out.value = scale * total;
  out.error = scale * (head.abs_error + tail.abs_error);
  out.ok = std::isfinite(out.value) && out.error <= rel_tol * std::fabs(out.value);
  return out;
}

}  // namespace detail

/// Plain power series for E_beta^(k)(z), with high-precision escalation.
inline double mittag_leffler_deriv_series(OrderParam beta, int k, double z, const EvalPolicy& policy = {}) {
  policy.validate();
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  return detail::evaluate_series(detail::SeriesSpec::ml_deriv(beta, k, z), policy.series(), beta, z);
}

/// E_beta(-x) by its power series only.
inline double mittag_leffler_neg_series(OrderParam beta, double x, const EvalPolicy& policy = {}) {
  policy.validate();
  return detail::evaluate_series(detail::SeriesSpec::ml_deriv(beta, 0, -x), policy.series(), beta, x);
}

/// E_beta(-x) for x >= 0.
inline double mittag_leffler_neg(OrderParam beta, double x, const EvalPolicy& policy = {}) {
  policy.validate();
  if (!(x >= 0.0)) throw DomainError("mittag_leffler_neg: x must be nonnegative");
  if (beta.is_one()) return std::exp(-x);
  if (x == 0.0) return 1.0;
  if (x <= 1.0) return mittag_leffler_neg_series(beta, x, policy);
  if (beta.value() == 0.5) return erfcx(x);
  const detail::Approx a = detail::ml_asymptotic(beta, 0, x, policy.rel_tol);
  if (a.ok) return a.value;
  return detail::ml_integral(beta, 0, x, policy.rel_tol);
}

/// k-th derivative E_beta^(k)(z) for z <= 0.
inline double mittag_leffler_deriv(OrderParam beta, int k, double z, const EvalPolicy& policy = {}) {
  policy.validate();
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  if (!(z <= 0.0)) throw DomainError("mittag_leffler_deriv: z must be nonpositive");
  if (beta.is_one()) return std::exp(z);
  if (k == 0) return mittag_leffler_neg(beta, -z, policy);
  const double x = -z;
  if (beta.value() == 0.5) {
    // E^(k)(-y) = 2^k k! exp(y^2) I^k erfc(y)
    const double lg = k * M_LN2 + detail::log_gamma_pos(k + 1.0);
    const double s = detail::erfc_repeated_scaled_nonneg(k, x);
    const double direct = std::ldexp(std::tgamma(k + 1.0), k) * s;
    if (std::isfinite(direct) && direct != 0.0 && k < 170) return direct;
    return std::exp(lg + std::log(s));
  }
  if (x <= 1.0) return mittag_leffler_deriv_series(beta, k, z, policy);
  const detail::Approx a = detail::ml_asymptotic(beta, k, x, policy.rel_tol);
  if (a.ok) return a.value;
  if (k == 1) return detail::ml_integral(beta, 1, x, policy.rel_tol);
  const detail::Approx h = detail::ml_integral_hankel(beta, k, x, policy.rel_tol);
  if (h.ok) return h.value;
  return mittag_leffler_deriv_series(beta, k, z, policy);
}

/// x^k E_beta^(k)(-x) / k!, the combination appearing in the fractional
/// Poisson probabilities (x = t^beta).
inline double mittag_leffler_count(OrderParam beta, int k, double x, const EvalPolicy& policy = {}) {
  policy.validate();
  if (k < 0) throw DomainError("index must be nonnegative");
  if (!(x >= 0.0)) throw DomainError("mittag_leffler_count: x must be nonnegative");
  if (k == 0) return mittag_leffler_neg(beta, x, policy);
  if (x == 0.0) return 0.0;
  if (beta.is_one()) {
    // Poisson probability x^k e^{-x}/k!
    return std::exp(k * std::log(x) - x - detail::log_gamma_pos(k + 1.0));
  }
  if (beta.value() == 0.5) {
    // (2y)^k exp(y^2) I^k erfc(y)
    const double s = detail::erfc_repeated_scaled_nonneg(k, x);
    const double p = std::pow(2.0 * x, k);
    if (std::isfinite(p) && p != 0.0) {
      const double v = p * s;
      if (std::isfinite(v) && v != 0.0) return v;
    }
    return s == 0.0 ? 0.0 : std::exp(k * std::log(2.0 * x) + std::log(s));
  }
  if (x > 1.0) {
    const detail::Approx a = detail::ml_asymptotic(beta, k, x, policy.rel_tol);
    if (a.ok) return std::exp(k * std::log(x) - detail::log_gamma_pos(k + 1.0)) * a.value;
    if (k == 1) return x * detail::ml_integral(beta, 1, x, policy.rel_tol);
    const detail::Approx h = detail::ml_integral_hankel(beta, k, x, policy.rel_tol);
    if (h.ok) return std::exp(k * std::log(x) - detail::log_gamma_pos(k + 1.0)) * h.value;
  }
  return detail::evaluate_series(detail::SeriesSpec::ml_count(beta, k, x), policy.series(), beta, x);
}

// ---------------------------------------------------------------------------
// Wright

namespace detail {

inline void check_wright_args(double lambda, double z) {
  if (!(lambda > -1.0 && lambda < 0.0)) throw DomainError("wright_phi: lambda must lie in (-1, 0)");
  if (!(z <= 0.0)) throw DomainError("wright_phi: z must be nonpositive");
}

}  // namespace detail

/// Wright function Phi_{lambda,mu}(z) = sum z^n / (n! Gamma(lambda n + mu)).
inline double wright_phi(double lambda, double mu, double z, const EvalPolicy& policy = {}) {
  policy.validate();
  detail::check_wright_args(lambda, z);
  return detail::evaluate_series(detail::SeriesSpec::wright(lambda, mu, z), policy.series(), -lambda, z);
}

/// Phi_{lambda,mu}(z) - 1/Gamma(mu), i.e. the series without its n = 0 term.
inline double wright_phi_minus_first(double lambda, double mu, double z, const EvalPolicy& policy = {}) {
  policy.validate();
  detail::check_wright_args(lambda, z);
  return detail::evaluate_series(detail::SeriesSpec::wright(lambda, mu, z, 1), policy.series(), -lambda, z);
}

/// Phi_{lambda,mu}(z1) - Phi_{lambda,mu}(z2) for z2 < z1 <= 0, summed as one
/// series to avoid subtracting two nearly equal values.
inline double wright_phi_difference(double lambda, double mu, double z1, double z2, const EvalPolicy& policy = {}) {
  policy.validate();
  detail::check_wright_args(lambda, z1);
  detail::check_wright_args(lambda, z2);
  if (z2 == 0.0) return 0.0;
  detail::SeriesSpec s = detail::SeriesSpec::wright(lambda, mu, z2, 1);
  s.difference = true;
  s.r = z1 / z2;
  return detail::evaluate_series(s, policy.series(), -lambda, z2);
}

/// M-function M_nu(y) = Phi_{-nu, 1-nu}(-y).
inline double m_function(double nu, double y, const EvalPolicy& policy = {}) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("m_function: nu must lie in (0, 1)");
  if (!(y >= 0.0)) throw DomainError("m_function: y must be nonnegative");
  return wright_phi(-nu, 1.0 - nu, -y, policy);
}

}  // namespace fracrenewal
