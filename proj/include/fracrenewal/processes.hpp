#pragma once

// The three waiting-time laws: exponential (Poisson process), Mittag-Leffler
// and one-sided stable (Wright), with their k-fold laws, counting
// probabilities and renewal functions.

#include <fracrenewal/renewal.hpp>
#include <fracrenewal/rng.hpp>
#include <fracrenewal/specfun.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <optional>

namespace fracrenewal {

struct TailConstants {
  double A_inf;  // t^{1+beta} phi(t) -> A_inf as t -> inf
  double A;      // 1 - Psi(t) ~ A t^{b/2} exp(-B t^{-b}) as t -> 0 (Wright)
  double B;
  double C;      // phi(t) ~ C t^{-c} exp(-B t^{-b}) as t -> 0 (Wright)
  double b;
  double c;
};

inline TailConstants tail_constants(OrderParam beta) {
  const double bt = beta.value();
  if (beta.is_one()) throw DomainError("tail_constants: beta must be < 1");
  const double om = 1.0 - bt;
  TailConstants k{};
  k.A_inf = std::tgamma(bt + 1.0) * std::sin(bt * M_PI) / M_PI;
  k.b = bt / om;
  k.c = (2.0 - bt) / (2.0 * om);
  const double bpow = std::pow(bt, 1.0 / om);
  k.A = std::sqrt(1.0 / (2.0 * M_PI * om * bpow));
  k.B = om * std::pow(bt, k.b);
  k.C = std::sqrt(bpow / (2.0 * M_PI * om));
  return k;
}

// ---------------------------------------------------------------------------

class PoissonLaw : public WaitingTimeLaw {
 public:
  explicit PoissonLaw(double lambda = 1.0) : lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("Poisson rate must be positive");
  }
  double lambda() const { return lambda_; }

  double survival(double t) const override { return t <= 0.0 ? 1.0 : std::exp(-lambda_ * t); }
  double density(double t) const override { return t < 0.0 ? 0.0 : lambda_ * std::exp(-lambda_ * t); }
  double cdf(double t) const override { return t <= 0.0 ? 0.0 : -std::expm1(-lambda_ * t); }

  double kfold_density(int k, double t) const override {
    check_k(k);
    if (t <= 0.0) return k == 1 ? lambda_ : 0.0;
    return lambda_ * boost::math::gamma_p_derivative(static_cast<double>(k), lambda_ * t);
  }
  double kfold_cdf(int k, double t) const override {
    check_k(k);
    if (t <= 0.0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(k), lambda_ * t);
  }
  std::optional<double> counting_prob_closed(int k, double t) const override {
    if (t <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return survival(t);
    return boost::math::gamma_p_derivative(k + 1.0, lambda_ * t);
  }
  std::optional<double> renewal_closed(double t) const override { return lambda_ * t; }

  double sample(RngStream& rng) const override { return -std::log(rng.uniform_open()) / lambda_; }
  LawDescriptor descriptor() const override { return {"poisson", 1.0, lambda_}; }

 private:
  static void check_k(int k) {
    if (k < 1) throw DomainError("k-fold law needs k >= 1");
  }
  double lambda_;
};

// ---------------------------------------------------------------------------

class MittagLefflerLaw : public WaitingTimeLaw {
 public:
  explicit MittagLefflerLaw(OrderParam beta, EvalPolicy policy = default_policy())
      : beta_(beta), policy_(policy), poisson_(1.0) {}

  static EvalPolicy default_policy() {
    EvalPolicy p;
    p.rel_tol = 1e-13;
    p.max_terms = 4000;
    return p;
  }

  OrderParam beta() const { return beta_; }

  double survival(double t) const override {
    if (beta_.is_one()) return poisson_.survival(t);
    if (t <= 0.0) return 1.0;
    return mittag_leffler_neg(beta_, std::pow(t, beta_.value()), policy_);
  }
  double density(double t) const override {
    if (beta_.is_one()) return poisson_.density(t);
    if (t <= 0.0) return INFINITY;
    const double b = beta_.value();
    const double x = std::pow(t, b);
    return b * x / t * mittag_leffler_deriv(beta_, 1, -x, policy_);
  }
  double cdf(double t) const override {
    if (beta_.is_one()) return poisson_.cdf(t);
    if (t <= 0.0) return 0.0;
    const double b = beta_.value();
    const double x = std::pow(t, b);
    if (x <= 1.0) {
      // 1 - E(-x) = sum_{n>=1} (-1)^{n+1} x^n / Gamma(beta n + 1); for x <= 1 no
      // term dwarfs the sum, which keeps its relative accuracy as t -> 0
      double sum = 0.0, p = 1.0;
      for (int n = 1; n < 1000; ++n) {
        p *= -x;
        const double term = -p * detail::rgamma(b * n + 1.0);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
      }
      return sum;
    }
    return kfold_cdf(1, t);
  }

  /// v_k(t) = t^{k beta} E^{(k)}(-t^beta) / k!
  double counting(int k, double t) const {
    if (beta_.is_one()) return *poisson_.counting_prob_closed(k, t);
    if (t <= 0.0) return k == 0 ? 1.0 : 0.0;
    return mittag_leffler_count(beta_, k, std::pow(t, beta_.value()), policy_);
  }

  double kfold_density(int k, double t) const override {
    if (k < 1) throw DomainError("k-fold law needs k >= 1");
    if (beta_.is_one()) return poisson_.kfold_density(k, t);
    if (k == 1) return density(t);
    if (t <= 0.0) return 0.0;
    return beta_.value() * k / t * counting(k, t);
  }

  double kfold_cdf(int k, double t) const override {
    if (k < 1) throw DomainError("k-fold law needs k >= 1");
    if (beta_.is_one()) return poisson_.kfold_cdf(k, t);
    if (t <= 0.0) return 0.0;
    double head = 0.0;
    for (int n = 0; n < k; ++n) head += counting(n, t);
    if (head < 0.5) return 1.0 - head;
    // small t: sum the tail instead of subtracting from one
    double tail = 0.0;
    for (int n = k; n < k + kCountingCap; ++n) {
      const double v = counting(n, t);
      tail += v;
      if (v <= 1e-17 * tail) break;
    }
    return tail;
  }

  std::optional<double> counting_prob_closed(int k, double t) const override { return counting(k, t); }
  std::optional<double> renewal_closed(double t) const override {
    if (t <= 0.0) return 0.0;
    return std::pow(t, beta_.value()) / std::tgamma(1.0 + beta_.value());
  }

  double sample(RngStream& rng) const override { return mittag_leffler_variate(beta_.value(), rng); }
  LawDescriptor descriptor() const override { return {"ml", beta_.value(), 1.0}; }

 private:
  OrderParam beta_;
  EvalPolicy policy_;
  PoissonLaw poisson_;
};

// ---------------------------------------------------------------------------

namespace detail {

/// Wright-law building blocks in the scaled time tau (k-fold laws are
/// obtained by tau = t k^{-1/beta}). Below the switch the series in
/// tau^{-beta} is replaced by its leading small-tau asymptotics.
class WrightKernel {
 public:
  static constexpr double kSwitch = 30.0;

  WrightKernel(double beta, const EvalPolicy& policy) : beta_(beta), policy_(policy) {
    if (beta < 1.0) k_ = tail_constants(beta);
  }

  // exponent B tau^{-b} that measures the series cancellation
  double lambda_exponent(double tau) const { return k_.B * std::pow(tau, -k_.b); }

  /// 1 - Psi(tau) = Phi_{-beta,1}(-tau^{-beta})
  double cdf(double tau) const {
    if (tau <= 0.0) return 0.0;
    const double L = lambda_exponent(tau);
    if (L > kSwitch) return k_.A * std::pow(tau, 0.5 * k_.b) * std::exp(-L);
    return wright_phi(-beta_, 1.0, -std::pow(tau, -beta_), policy_);
  }
  double survival(double tau) const {
    if (tau <= 0.0) return 1.0;
    const double L = lambda_exponent(tau);
    if (L > kSwitch) return 1.0 - k_.A * std::pow(tau, 0.5 * k_.b) * std::exp(-L);
    return -wright_phi_minus_first(-beta_, 1.0, -std::pow(tau, -beta_), policy_);
  }
  double density(double tau) const {
    if (tau <= 0.0) return 0.0;
    const double L = lambda_exponent(tau);
    if (L > kSwitch) return k_.C * std::pow(tau, -k_.c) * std::exp(-L);
    return wright_phi(-beta_, 0.0, -std::pow(tau, -beta_), policy_) / tau;
  }
  /// Phi(-k s) - Phi(-(k+1) s), s = t^{-beta}
  double counting(int k, double t) const {
    const double s = std::pow(t, -beta_);
    const double tk = t * std::pow(static_cast<double>(k), -1.0 / beta_);
    if (lambda_exponent(tk) > kSwitch) {
      const double tk1 = t * std::pow(static_cast<double>(k + 1), -1.0 / beta_);
      return cdf(tk) - cdf(tk1);
    }
    return wright_phi_difference(-beta_, 1.0, -k * s, -(k + 1) * s, policy_);
  }

 private:
  double beta_;
  EvalPolicy policy_;
  TailConstants k_{};
};

}  // namespace detail

class WrightLaw : public WaitingTimeLaw {
 public:
  /// With closed_forms false the beta = 1/2 erfc forms are bypassed and the
  /// general Wright-series paths are used.
  explicit WrightLaw(OrderParam beta, EvalPolicy policy = default_policy(), bool closed_forms = true)
      : beta_(beta), policy_(policy), closed_(closed_forms && beta.value() == 0.5), kernel_(beta, policy) {}

  static EvalPolicy default_policy() {
    EvalPolicy p;
    p.rel_tol = 1e-13;
    p.max_terms = 4000;
    return p;
  }

  OrderParam beta() const { return beta_; }
  bool is_clock() const { return beta_.is_one(); }

  double survival(double t) const override {
    if (is_clock()) return t < 1.0 ? 1.0 : 0.0;
    if (t <= 0.0) return 1.0;
    if (closed_) return std::erf(0.5 / std::sqrt(t));
    return kernel_.survival(t);
  }
  double cdf(double t) const override {
    if (is_clock()) return t < 1.0 ? 0.0 : 1.0;
    if (t <= 0.0) return 0.0;
    if (closed_) return std::erfc(0.5 / std::sqrt(t));
    return kernel_.cdf(t);
  }
  double density(double t) const override {
    if (is_clock()) throw AtomDistributionError("clock process: waiting time is an atom at t = 1; use cdf()");
    if (t <= 0.0) return 0.0;
    if (closed_) return std::exp(-0.25 / t) / (2.0 * std::sqrt(M_PI) * t * std::sqrt(t));
    return kernel_.density(t);
  }

  double kfold_density(int k, double t) const override {
    if (k < 1) throw DomainError("k-fold law needs k >= 1");
    if (is_clock()) throw AtomDistributionError("clock process: k-fold waiting time is an atom at t = k");
    const double s = std::pow(static_cast<double>(k), -1.0 / beta_.value());
    return s * density(t * s);
  }
  double kfold_cdf(int k, double t) const override {
    if (k < 1) throw DomainError("k-fold law needs k >= 1");
    if (is_clock()) return t < k ? 0.0 : 1.0;
    if (t <= 0.0) return 0.0;
    if (closed_) return std::erfc(k / (2.0 * std::sqrt(t)));
    return cdf(t * std::pow(static_cast<double>(k), -1.0 / beta_.value()));
  }

  double counting(int k, double t) const {
    if (k < 0) throw DomainError("counting: k must be >= 0");
    if (k == 0) return survival(t);
    if (is_clock()) return (t >= k && t < k + 1) ? 1.0 : 0.0;
    if (t <= 0.0) return 0.0;
    if (closed_) {
      const double a = k / (2.0 * std::sqrt(t));
      const double b = (k + 1) / (2.0 * std::sqrt(t));
      return a < 1.0 ? std::erf(b) - std::erf(a) : std::erfc(a) - std::erfc(b);
    }
    return kernel_.counting(k, t);
  }

  std::optional<double> counting_prob_closed(int k, double t) const override { return counting(k, t); }
  std::optional<double> renewal_closed(double t) const override {
    if (is_clock()) return t < 0.0 ? 0.0 : std::floor(t);
    return std::nullopt;
  }

  double sample(RngStream& rng) const override {
    if (is_clock()) return 1.0;
    return positive_stable(beta_.value(), rng);
  }
  LawDescriptor descriptor() const override { return {"wright", beta_.value(), 1.0}; }
  bool has_atoms() const override { return is_clock(); }

 private:
  OrderParam beta_;
  EvalPolicy policy_;
  bool closed_;
  detail::WrightKernel kernel_;
};

// ---------------------------------------------------------------------------
// Quantity bundles

struct PoissonQuantities {
  double survival, density, v_k, f_k, F_k, m;
};

inline PoissonQuantities poisson_quantities(double lambda, int k, double t) {
  if (k < 0) throw DomainError("k must be >= 0");
  if (!(t >= 0.0)) throw DomainError("t must be >= 0");
  const PoissonLaw law(lambda);
  PoissonQuantities q{};
  q.survival = law.survival(t);
  q.density = law.density(t);
  q.v_k = *law.counting_prob_closed(k, t);
  q.f_k = k >= 1 ? law.kfold_density(k, t) : NAN;
  q.F_k = k >= 1 ? law.kfold_cdf(k, t) : NAN;
  q.m = *law.renewal_closed(t);
  return q;
}

struct MittagLefflerQuantities {
  double survival, density, v_k, f_k, F_k, m, A_inf;
};

inline MittagLefflerQuantities ml_quantities(OrderParam beta, int k, double t) {
  if (k < 0) throw DomainError("k must be >= 0");
  if (!(t >= 0.0)) throw DomainError("t must be >= 0");
  const MittagLefflerLaw law(beta);
  MittagLefflerQuantities q{};
  q.survival = law.survival(t);
  q.density = law.density(t);
  q.v_k = law.counting(k, t);
  q.f_k = k >= 1 ? law.kfold_density(k, t) : NAN;
  q.F_k = k >= 1 ? law.kfold_cdf(k, t) : NAN;
  q.m = *law.renewal_closed(t);
  q.A_inf = beta.is_one() ? NAN : tail_constants(beta).A_inf;
  return q;
}

struct WrightQuantities {
  double survival;
  double density;         // NaN for the clock process (atom at 1)
  double v_k;
  double m_large_t;       // t^beta / Gamma(1+beta), the large-time behaviour of m(t)
  double survival_small_t;  // small-time envelope 1 - A t^{b/2} exp(-B t^{-b})
};

inline WrightQuantities wright_quantities(OrderParam beta, int k, double t) {
  if (k < 0) throw DomainError("k must be >= 0");
  if (!(t >= 0.0)) throw DomainError("t must be >= 0");
  const WrightLaw law(beta);
  WrightQuantities q{};
  q.survival = law.survival(t);
  q.density = law.is_clock() ? NAN : law.density(t);
  q.v_k = law.counting(k, t);
  q.m_large_t = std::pow(t, beta.value()) / std::tgamma(1.0 + beta.value());
  if (!beta.is_one() && t > 0.0) {
    const TailConstants c = tail_constants(beta);
    q.survival_small_t = 1.0 - c.A * std::pow(t, 0.5 * c.b) * std::exp(-c.B * std::pow(t, -c.b));
  } else {
    q.survival_small_t = NAN;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Closed forms at beta = 1/2 and the common power-law asymptote

namespace half {

inline double ml_survival(double t) { return erfcx(std::sqrt(t)); }
inline double ml_density(double t) { return 1.0 / std::sqrt(M_PI * t) - erfcx(std::sqrt(t)); }
inline double wright_survival(double t) { return std::erf(0.5 / std::sqrt(t)); }
inline double wright_density(double t) { return std::exp(-0.25 / t) / (2.0 * std::sqrt(M_PI) * std::pow(t, 1.5)); }
inline double power_law_survival(double t) { return 1.0 / std::sqrt(M_PI * t); }
inline double power_law_density(double t) { return 1.0 / (2.0 * std::sqrt(M_PI) * std::pow(t, 1.5)); }

}  // namespace half

}  // namespace fracrenewal
