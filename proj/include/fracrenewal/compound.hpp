#pragma once

// Compound renewal processes (continuous-time random walks): jump laws, the
// series for the sojourn cdf P(x, t) = Psi(t) Theta(x) + sum_k v_k(t) W_k(x),
// and a residual check of the compound Poisson solution.

#include <fracrenewal/processes.hpp>
#include <fracrenewal/quadrature.hpp>
#include <fracrenewal/renewal.hpp>

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

namespace fracrenewal {

class JumpLaw {
 public:
  virtual ~JumpLaw() = default;
  virtual double density(double x) const { return kfold_density(1, x); }
  virtual double cdf(double x) const { return kfold_cdf(1, x); }
  virtual double kfold_density(int k, double x) const = 0;
  virtual double kfold_cdf(int k, double x) const = 0;
  virtual double sample(RngStream& rng) const = 0;
  virtual bool symmetric() const = 0;
  virtual bool has_atoms() const { return false; }
};

/// Centered Gaussian jumps; the k-fold law has variance k * variance.
class GaussianJumpLaw : public JumpLaw {
 public:
  explicit GaussianJumpLaw(double variance = 2.0) : variance_(variance) {
    if (!(variance > 0.0)) throw DomainError("jump variance must be positive");
  }
  double variance() const { return variance_; }

  double kfold_density(int k, double x) const override {
    check(k);
    const double v = variance_ * k;
    return std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * M_PI * v);
  }
  double kfold_cdf(int k, double x) const override {
    check(k);
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance_ * k));
  }
  double sample(RngStream& rng) const override { return rng.normal(std::sqrt(variance_)); }
  bool symmetric() const override { return true; }

 private:
  static void check(int k) {
    if (k < 1) throw DomainError("k-fold jump law needs k >= 1");
  }
  double variance_;
};

/// Jumps identically zero.
class DegenerateJumpLaw : public JumpLaw {
 public:
  double kfold_density(int, double) const override {
    throw AtomDistributionError("degenerate jumps: the jump law is an atom at 0");
  }
  double kfold_cdf(int k, double x) const override {
    if (k < 1) throw DomainError("k-fold jump law needs k >= 1");
    return x >= 0.0 ? 1.0 : 0.0;
  }
  double sample(RngStream&) const override { return 0.0; }
  bool symmetric() const override { return true; }
  bool has_atoms() const override { return true; }
};

struct GaussianKfold {
  double w;
  double W;
};

/// w_k and W_k for the unit Gaussian jumps of variance 2.
inline GaussianKfold gaussian_kfold(int k, double x) {
  const GaussianJumpLaw g(2.0);
  return {g.kfold_density(k, x), g.kfold_cdf(k, x)};
}

// ---------------------------------------------------------------------------

/// P(x, t) at fixed t. The mass Psi(t) at x = 0 is kept as a separate atom.
class SojournCDF {
 public:
  SojournCDF(std::shared_ptr<const JumpLaw> jumps, CountingSeries series, double tail_tol)
      : jumps_(std::move(jumps)), series_(std::move(series)), tail_tol_(tail_tol) {
    const auto& v = series_.values;
    suffix_.assign(v.size() + 1, 0.0);
    for (std::size_t k = v.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + v[k];
  }

  double t() const { return series_.t; }
  double atom_mass() const { return series_.values.front(); }
  int K() const { return series_.K(); }
  double tail_bound() const { return series_.tail_bound; }
  const CountingSeries& series() const { return series_; }

  /// sum_{k>=1} v_k W_k(x)
  double continuous(double x) const {
    const auto& v = series_.values;
    double acc = 0.0;
    const double cut = 1e-3 * tail_tol_;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (suffix_[k] < cut) break;
      if (v[k] != 0.0) acc += v[k] * jumps_->kfold_cdf(static_cast<int>(k), x);
    }
    return acc;
  }
  /// sum_{k>=1} v_k w_k(x), the density of the continuous part
  double continuous_density(double x) const {
    const auto& v = series_.values;
    double acc = 0.0;
    const double cut = 1e-3 * tail_tol_;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (suffix_[k] < cut) break;
      if (v[k] != 0.0) acc += v[k] * jumps_->kfold_density(static_cast<int>(k), x);
    }
    return acc;
  }

  /// P(x, t), right-continuous: the atom is included at x = 0.
  double operator()(double x) const { return (x >= 0.0 ? atom_mass() : 0.0) + continuous(x); }
  /// P(x-, t)
  double left_limit(double x) const {
    if (jumps_->has_atoms()) {
      const double xl = std::nextafter(x, -INFINITY);
      return (xl >= 0.0 ? atom_mass() : 0.0) + continuous(xl);
    }
    return (x > 0.0 ? atom_mass() : 0.0) + continuous(x);
  }

 private:
  std::shared_ptr<const JumpLaw> jumps_;
  CountingSeries series_;
  double tail_tol_;
  std::vector<double> suffix_;
};

inline SojournCDF sojourn_cdf(const WaitingTimeLaw& process, std::shared_ptr<const JumpLaw> jumps, double t,
                              double tail_tol = 1e-10) {
  if (!(t > 0.0)) throw DomainError("sojourn_cdf: t must be positive");
  return SojournCDF(std::move(jumps), counting_series(process, t, tail_tol), tail_tol);
}

// Specialized evaluations of P(x, t), each summing its own closed-form weights.

inline double compound_poisson_cdf(double lambda, const JumpLaw& jumps, double x, double t, double tail_tol = 1e-10) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  const double mu = lambda * t;
  double p = std::exp(-mu);
  double acc = x >= 0.0 ? p : 0.0;
  double mass = p;
  for (int k = 1; k <= kCountingCap; ++k) {
    // log-space weight keeps large mu from underflowing the recurrence
    p = std::exp(k * std::log(mu) - mu - detail::log_gamma_pos(k + 1.0));
    acc += p * jumps.kfold_cdf(k, x);
    mass += p;
    if (1.0 - mass <= 1e-3 * tail_tol && k > mu) break;
  }
  return acc;
}

inline double compound_ml_cdf(OrderParam beta, const JumpLaw& jumps, double x, double t, double tail_tol = 1e-10) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (beta.is_one()) return compound_poisson_cdf(1.0, jumps, x, t, tail_tol);
  const double y = std::pow(t, beta.value());
  const EvalPolicy pol = MittagLefflerLaw::default_policy();
  const double atom = mittag_leffler_neg(beta, y, pol);
  double acc = x >= 0.0 ? atom : 0.0;
  double mass = atom;
  for (int k = 1; k <= kCountingCap; ++k) {
    const double v = mittag_leffler_count(beta, k, y, pol);
    acc += v * jumps.kfold_cdf(k, x);
    mass += v;
    if (1.0 - mass <= 1e-3 * tail_tol) break;
  }
  return acc;
}

inline double compound_clock_cdf(const JumpLaw& jumps, double x, double t) {
  const int n = static_cast<int>(std::floor(t));
  if (n <= 0) return x >= 0.0 ? 1.0 : 0.0;
  return jumps.kfold_cdf(n, x);
}

inline double compound_wright_cdf(OrderParam beta, const JumpLaw& jumps, double x, double t, double tail_tol = 1e-10) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (beta.is_one()) return compound_clock_cdf(jumps, x, t);
  const EvalPolicy pol = WrightLaw::default_policy();
  const detail::WrightKernel kernel(beta.value(), pol);
  // P = Psi Theta + sum_k [F_k - F_{k+1}] W_k, with F_k = Phi_{-beta,1}(-k t^{-beta})
  const double atom = kernel.survival(t);
  double acc = x >= 0.0 ? atom : 0.0;
  double mass = atom;
  for (int k = 1; k <= kCountingCap; ++k) {
    const double v = kernel.counting(k, t);
    acc += v * jumps.kfold_cdf(k, x);
    mass += v;
    if (1.0 - mass <= 1e-3 * tail_tol) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------

/// Residual of the Kolmogorov-Feller equation  p_t = -p + w * p  for the
/// compound Poisson (rate 1) solution, on its continuous part:
///   d/dt p_c + p_c - e^{-t} w(x) - (w * p_c)(x).
/// With drop_atom the e^{-t} w(x) source is left out, i.e. the residual of a
/// solution that ignores the atom Psi(t) delta(x).
inline double kf_residual(const JumpLaw& jumps, double x, double t, double step = 1e-3, bool drop_atom = false) {
  if (!(t > 0.0) || !(step > 0.0) || step >= t) throw DomainError("kf_residual: need 0 < step < t");
  auto pc = [&](double y, double s) {
    double acc = 0.0;
    double mass = std::exp(-s);
    for (int k = 1; k <= kCountingCap; ++k) {
      const double v = std::exp(k * std::log(s) - s - detail::log_gamma_pos(k + 1.0));
      acc += v * jumps.kfold_density(k, y);
      mass += v;
      if (1.0 - mass < 1e-16 && k > s) break;
    }
    return acc;
  };
  const double dt = (pc(x, t + step) - pc(x, t - step)) / (2.0 * step);
  const double p = pc(x, t);
  auto integrand = [&](double y) { return jumps.density(x - y) * pc(y, t); };
  QuadOptions o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-11;
  auto right = integrate_to_infinity([&](double u) { return integrand(x + u); }, 0.0, o);
  auto left = integrate_to_infinity([&](double u) { return integrand(x - u); }, 0.0, o);
  const double conv = right.value + left.value;
  const double source = drop_atom ? 0.0 : std::exp(-t) * jumps.density(x);
  return dt + p - source - conv;
}

}  // namespace fracrenewal
