#pragma once

// Power series with reciprocal-gamma coefficients,
//
//   sum_n  c_n z^(n-n0) / Gamma(a n + b),
//
// summed in double with compensated summation and, when the running error
// bound cannot certify the requested tolerance, recomputed in MPFR with as
// many digits as the observed cancellation demands.

#include <fracrenewal/detail/bigfloat.hpp>
#include <fracrenewal/detail/summation.hpp>
#include <fracrenewal/errors.hpp>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <vector>

namespace fracrenewal::detail {

inline constexpr double kLogPi = 1.1447298858494002;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

inline double log_gamma_pos(double x) { return boost::math::lgamma(x); }

/// 1/Gamma(x) in double; zero at the poles.
inline double rgamma(double x) {
  if (is_pole(x)) return 0.0;
  if (x >= 0.5) return 1.0 / std::tgamma(x);
  return boost::math::sin_pi(x) * std::tgamma(1.0 - x) / M_PI;
}

/// log of an upper bound for |1/Gamma(x)|; exact for x > 0, and the
/// reflection bound Gamma(1-x)/pi otherwise.
inline double log_rgamma_bound(double x) {
  if (x > 0.0) return -log_gamma_pos(x);
  return log_gamma_pos(1.0 - x) - kLogPi;
}

/// Magnitude (log) and sign of 1/Gamma(x), valid far outside double range.
inline double log_abs_rgamma(double x, int& sign) {
  if (is_pole(x)) {
    sign = 0;
    return -INFINITY;
  }
  if (x > 0.0) {
    sign = 1;
    return -log_gamma_pos(x);
  }
  const double s = boost::math::sin_pi(x);
  sign = s > 0 ? 1 : -1;
  return log_gamma_pos(1.0 - x) + std::log(std::fabs(s)) - kLogPi;
}

/// Reciprocal gammas 1/Gamma(a n + b) in MPFR, grown on demand.
class RgammaTable {
 public:
  RgammaTable(double a, double b, mpfr_prec_t bits) : a_(a), b_(b), bits_(bits) {}

  double a() const { return a_; }
  double b() const { return b_; }
  mpfr_prec_t bits() const { return bits_; }

  const BigFloat& get(int n) {
    while (static_cast<int>(values_.size()) <= n) {
      BigFloat arg(a_, bits_);
      arg *= static_cast<long>(values_.size());
      arg += BigFloat(b_, bits_);
      values_.push_back(rgamma(arg));
    }
    return values_[static_cast<std::size_t>(n)];
  }

 private:
  double a_;
  double b_;
  mpfr_prec_t bits_;
  std::deque<BigFloat> values_;
};

/// Per-thread cache of reciprocal-gamma tables. Tables are keyed by (a, b)
/// and reused at any precision not above the one they were built with.
inline RgammaTable& rgamma_table(double a, double b, mpfr_prec_t bits) {
  thread_local std::deque<std::unique_ptr<RgammaTable>> cache;
  for (auto& entry : cache) {
    if (entry->a() == a && entry->b() == b && entry->bits() >= bits) return *entry;
  }
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    if ((*it)->a() == a && (*it)->b() == b) {
      cache.erase(it);
      break;
    }
  }
  if (cache.size() >= 24) cache.pop_front();
  cache.push_back(std::make_unique<RgammaTable>(a, b, bits));
  return *cache.back();
}

struct SeriesSum {
  double value = 0.0;
  double abs_sum = 0.0;     // sum of |terms|, for the rounding error bound
  double max_log_term = -INFINITY;  // log of the largest term envelope
  double cancel_log10 = 0.0;        // log10(sum|t| / |sum|), high-precision pass only
  double tail = 0.0;                // truncation estimate
  bool converged = false;
  bool finite = true;
};

/// Family of terms  w_n z^(n-n0) / Gamma(a n + b)  where the weight w_n obeys
/// w_n = w_(n-1) * ratio(n). Two concrete families are used:
///   Wright:     w_n = z^n/n!,              n0 = 0 (or 1)
///   ML deriv:   w_n = n!/(n-k)! z^(n-k),   n0 = k
///   ML count:   w_n = C(n,k) x^k (-x)^(n-k), n0 = k   (z = -x)
/// plus an optional per-term factor (r^n - 1) used for Wright differences.
struct SeriesSpec {
  enum class Weight { inverse_factorial, falling_factorial };
  enum class Start { power_over_factorial, factorial_k, power_k };
  Weight weight = Weight::inverse_factorial;
  Start start = Start::power_over_factorial;
  double a = 0.0;   // gamma slope
  double b = 1.0;   // gamma offset
  double z = 0.0;   // series variable
  int n0 = 0;       // first index
  int k = 0;        // derivative order for falling_factorial weights
  double base = 0.0;        // y for Start::power_k
  bool difference = false;  // multiply term n by (r^n - 1)
  double r = 0.0;

  static SeriesSpec wright(double lambda, double mu, double z, int n0 = 0) {
    SeriesSpec s;
    s.a = lambda;
    s.b = mu;
    s.z = z;
    s.n0 = n0;
    return s;
  }
  static SeriesSpec ml_deriv(double beta, int k, double z) {
    SeriesSpec s;
    s.weight = Weight::falling_factorial;
    s.start = Start::factorial_k;
    s.a = beta;
    s.b = 1.0;
    s.z = z;
    s.n0 = k;
    s.k = k;
    return s;
  }
  static SeriesSpec ml_count(double beta, int k, double x) {
    SeriesSpec s = ml_deriv(beta, k, -x);
    s.start = Start::power_k;
    s.base = x;
    return s;
  }

  // log|w_n0| and its sign
  double log_w0(int& sign) const {
    sign = 1;
    switch (start) {
      case Start::power_over_factorial:
        if (n0 == 0) return 0.0;
        if (z == 0.0) return -INFINITY;
        if (z < 0.0 && n0 % 2 != 0) sign = -1;
        return n0 * std::log(std::fabs(z)) - boost::math::lgamma(n0 + 1.0);
      case Start::factorial_k:
        return boost::math::lgamma(k + 1.0);
      case Start::power_k:
        if (k == 0) return 0.0;
        return base == 0.0 ? -INFINITY : k * std::log(base);
    }
    return 0.0;
  }
};

namespace series_impl {

inline double weight_log_ratio(const SeriesSpec& s, int n, double log_abs_z) {
  if (s.weight == SeriesSpec::Weight::inverse_factorial) return log_abs_z - std::log(static_cast<double>(n));
  return log_abs_z + std::log(static_cast<double>(n)) - std::log(static_cast<double>(n - s.k));
}

inline double weight_ratio(const SeriesSpec& s, int n) {
  if (s.weight == SeriesSpec::Weight::inverse_factorial) return s.z / n;
  return s.z * n / static_cast<double>(n - s.k);
}

// Stopping rule shared by both passes: the envelope is decreasing and its
// geometric tail bound is below target, twice in a row.
struct Stopper {
  double prev_log_env = INFINITY;
  int quiet = 0;

  // returns the log tail estimate, or +inf while not yet decreasing
  double log_tail(double log_env) {
    double lt = INFINITY;
    if (log_env <= prev_log_env && std::isfinite(prev_log_env)) {
      const double log_ratio = log_env - prev_log_env;
      if (log_ratio < 0.0) lt = log_env + log_ratio - std::log(-std::expm1(log_ratio));
      if (log_env == -INFINITY) lt = -INFINITY;
    } else if (log_env == -INFINITY && prev_log_env == -INFINITY) {
      lt = -INFINITY;
    }
    prev_log_env = log_env;
    return lt;
  }
  bool accept(bool ok) {
    quiet = ok ? quiet + 1 : 0;
    return quiet >= 2;
  }
};

}  // namespace series_impl

/// Double-precision pass. `target` is the relative truncation target.
inline SeriesSum sum_series_double(const SeriesSpec& s, double target, int max_terms) {
  SeriesSum out;
  CompensatedSum acc;
  const double log_abs_z = s.z == 0.0 ? -INFINITY : std::log(std::fabs(s.z));
  int sign0 = 1;
  double log_w = s.log_w0(sign0);
  double w = sign0 * std::exp(log_w);
  series_impl::Stopper stop;
  const double log_r = s.difference ? std::log(s.r) : 0.0;
  for (int i = 0; i < max_terms; ++i) {
    const int n = s.n0 + i;
    if (i > 0) {
      if (s.z == 0.0) {
        out.converged = true;
        break;
      }
      w *= series_impl::weight_ratio(s, n);
      log_w += series_impl::weight_log_ratio(s, n, log_abs_z);
    }
    const double x = s.a * n + s.b;
    const double log_env = log_w + log_rgamma_bound(x);
    if (!out.finite) {
      // overflowed: only locate the peak of the envelope for the caller
      out.max_log_term = std::max(out.max_log_term, log_env);
      if (log_env < out.max_log_term - 50.0) return out;
      continue;
    }
    double term = 0.0;
    if (!is_pole(x) && log_w > -INFINITY) {
      const bool direct = std::fabs(x) < 170.0 && std::isnormal(w) && std::fabs(log_w) < 700.0;
      if (direct) {
        term = w * rgamma(x);
      } else {
        int sg = 0;
        const double lg = log_abs_rgamma(x, sg);
        const double wsign = sign0 * ((s.z < 0.0 && (n - s.n0) % 2 != 0) ? -1.0 : 1.0);
        term = wsign * sg * std::exp(log_w + lg);
      }
      if (s.difference) term *= std::expm1(n * log_r);
    }
    if (!std::isfinite(term)) {
      out.finite = false;
      out.max_log_term = std::max(out.max_log_term, log_env);
      continue;
    }
    acc += term;
    out.abs_sum += std::fabs(term);
    out.max_log_term = std::max(out.max_log_term, log_env);

    const double lt = stop.log_tail(log_env);
    const double scale = std::max(std::fabs(acc.value()), out.abs_sum * kEps);
    if (stop.accept(i > 0 && (lt == -INFINITY || (scale > 0.0 && lt <= std::log(target * scale))))) {
      out.tail = std::exp(lt);
      out.converged = true;
      break;
    }
  }
  out.value = acc.value();
  return out;
}

/// MPFR pass at `digits` decimal digits.
inline SeriesSum sum_series_hp(const SeriesSpec& s, int digits, int max_terms) {
  SeriesSum out;
  const mpfr_prec_t bits = digits_to_bits(digits);
  RgammaTable& table = rgamma_table(s.a, s.b, bits);
  const double log_abs_z = s.z == 0.0 ? -INFINITY : std::log(std::fabs(s.z));
  const double log_target = -(digits - 3) * M_LN10;

  const BigFloat zb(s.z, bits);
  BigFloat w(1.0, bits);
  switch (s.start) {
    case SeriesSpec::Start::power_over_factorial:
      for (int j = 2; j <= s.n0; ++j) w /= static_cast<long>(j);
      if (s.n0 > 0) w *= pow(zb, static_cast<long>(s.n0));
      break;
    case SeriesSpec::Start::factorial_k:
      for (int j = 2; j <= s.k; ++j) w *= static_cast<long>(j);
      break;
    case SeriesSpec::Start::power_k:
      w = pow(BigFloat(s.base, bits), static_cast<long>(s.k));
      break;
  }
  int sign0 = 1;
  double log_w = s.log_w0(sign0);

  const BigFloat one(1.0, bits);
  const BigFloat rb(s.r, bits);
  BigFloat rpow(1.0, bits);
  if (s.difference) rpow = pow(rb, static_cast<long>(s.n0));

  BigFloat acc(bits);
  BigFloat abs_acc(bits);
  series_impl::Stopper stop;
  for (int i = 0; i < max_terms; ++i) {
    const int n = s.n0 + i;
    if (i > 0) {
      if (s.z == 0.0) {
        out.converged = true;
        break;
      }
      w *= zb;
      if (s.weight == SeriesSpec::Weight::inverse_factorial) {
        w /= static_cast<long>(n);
      } else {
        w *= static_cast<long>(n);
        w /= static_cast<long>(n - s.k);
      }
      log_w += series_impl::weight_log_ratio(s, n, log_abs_z);
      if (s.difference) rpow *= rb;
    }
    const double x = s.a * n + s.b;
    const double log_env = log_w + log_rgamma_bound(x);
    BigFloat term = w * table.get(n);
    if (s.difference) term *= (rpow - one);
    acc += term;
    abs_acc += abs(term);
    out.max_log_term = std::max(out.max_log_term, log_env);

    const double lt = stop.log_tail(log_env);
    const double scale_log10 = std::max(acc.log10_abs(), abs_acc.log10_abs() - digits);
    if (stop.accept(i > 0 && (lt == -INFINITY || lt <= log_target + scale_log10 * M_LN10))) {
      out.converged = true;
      out.tail = std::exp(lt);
      break;
    }
  }
  out.value = acc.to_double();
  out.abs_sum = abs_acc.to_double();
  out.cancel_log10 = abs_acc.log10_abs() - acc.log10_abs();
  return out;
}

struct SeriesPolicy {
  double rel_tol = 1e-12;
  int max_terms = 500;
  int highprec_digits = 50;
};

/// Double pass, escalating to MPFR until the error bound certifies rel_tol.
inline double evaluate_series(const SeriesSpec& s, const SeriesPolicy& p, double beta_for_error, double x_for_error) {
  const SeriesSum d = sum_series_double(s, p.rel_tol * 1e-2, p.max_terms);
  if (d.finite && d.converged) {
    const double bound = 8.0 * kEps * d.abs_sum + d.tail;
    if (bound <= p.rel_tol * std::fabs(d.value) || d.abs_sum == 0.0) return d.value;
  }
  // largest term in decimal digits, assuming an O(1) result
  const double big = std::max(0.0, d.max_log_term / M_LN10);
  int digits = std::max(p.highprec_digits, static_cast<int>(std::ceil(big - std::log10(p.rel_tol))) + 20);
  constexpr int kMaxDigits = 4000;
  for (int attempt = 0; attempt < 8 && digits <= kMaxDigits; ++attempt) {
    const SeriesSum h = sum_series_hp(s, digits, p.max_terms);
    if (!h.converged) throw EvaluationError("series did not converge within max_terms", beta_for_error, x_for_error);
    if (h.abs_sum == 0.0) return 0.0;
    if (std::isfinite(h.cancel_log10)) {
      const double needed = h.cancel_log10 - std::log10(p.rel_tol) + 3.0;
      if (needed <= digits) return h.value;
      digits = static_cast<int>(std::ceil(needed)) + 10;
    } else {
      digits *= 2;
    }
  }
  throw CancellationError("cancellation could not be resolved in high precision", beta_for_error, x_for_error);
}

}  // namespace fracrenewal::detail
