#pragma once

// Time-fractional diffusion limit: the fundamental solution
//   u(x, t) = M_{beta/2}(|x| / t^{beta/2}) / (2 t^{beta/2}),
// its cumulative function U(x, t), the scaling relation between the time and
// space steps, and the sup distance between a CTRW cdf and U.

#include <fracrenewal/compound.hpp>
#include <fracrenewal/quadrature.hpp>
#include <fracrenewal/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace fracrenewal {

namespace detail {

// y beyond which exp(-(1-nu)(nu^nu y)^{1/(1-nu)}) < exp(-exponent)
inline double m_decay_point(double nu, double exponent) {
  return std::pow(exponent / (1.0 - nu), 1.0 - nu) / std::pow(nu, nu);
}

// leading saddle-point term: with z = nu y,
// M_nu(y) ~ z^{(nu-1/2)/(1-nu)} exp(-(1-nu)/nu z^{1/(1-nu)}) / sqrt(2 pi (1-nu));
// relative error about 0.5 / exponent
inline double m_function_tail(double nu, double y) {
  const double z = nu * y;
  const double om = 1.0 - nu;
  return std::exp((nu - 0.5) / om * std::log(z) - om / nu * std::pow(z, 1.0 / om)) / std::sqrt(2.0 * M_PI * om);
}

}  // namespace detail

/// u(x, t)
inline double tfde_pdf(OrderParam beta, double x, double t) {
  if (!(t > 0.0)) throw DomainError("tfde_pdf: t must be positive");
  if (beta.is_one()) return std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(M_PI * t));
  const double nu = 0.5 * beta.value();
  const double s = std::pow(t, nu);
  const double y = std::fabs(x) / s;
  // past exp(-80) the series cancellation gets expensive; the tail form is used
  if (y > detail::m_decay_point(nu, 80.0)) return detail::m_function_tail(nu, y) / (2.0 * s);
  return m_function(nu, y, EvalPolicy{1e-13, 20000, 50}) / (2.0 * s);
}

/// Cumulative function of the similarity variable, I(y) = int_0^y M_nu,
/// tabulated once on panels of width ~1/2 and refined inside a panel by
/// adaptive quadrature. Beyond the table I(y) = 1 to double precision.
class MIntegralTable {
 public:
  explicit MIntegralTable(double nu) : nu_(nu) {
    if (!(nu > 0.0 && nu < 1.0)) throw DomainError("MIntegralTable: nu must lie in (0, 1)");
    // the M-function decays like exp(-(1-nu)(nu^nu y)^{1/(1-nu)})
    y_max_ = detail::m_decay_point(nu, kExponentMax);
    const int panels = std::max(8, static_cast<int>(std::ceil(y_max_ / 0.5)));
    h_ = y_max_ / panels;
    cum_.assign(static_cast<std::size_t>(panels) + 1, 0.0);
    for (int i = 0; i < panels; ++i) cum_[i + 1] = cum_[i] + piece(i * h_, (i + 1) * h_);
  }

  double nu() const { return nu_; }
  double y_max() const { return y_max_; }
  double total() const { return cum_.back(); }

  double operator()(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= y_max_) return 1.0;
    const auto i = static_cast<std::size_t>(std::floor(y / h_));
    const double y0 = static_cast<double>(i) * h_;
    return std::min(1.0, cum_[i] + piece(y0, y));
  }

 private:
  static constexpr double kExponentMax = 42.0;

  double piece(double a, double b) const {
    if (b <= a) return 0.0;
    QuadOptions o;
    o.abs_tol = 1e-16;
    o.rel_tol = 1e-14;
    const EvalPolicy pol{1e-14, 4000, 50};
    const QuadResult r = integrate([&](double y) { return m_function(nu_, y, pol); }, a, b, o);
    return r.value;
  }

  double nu_;
  double y_max_ = 0.0;
  double h_ = 0.0;
  std::vector<double> cum_;
};

namespace detail {

inline std::shared_ptr<const MIntegralTable> m_integral_table(double nu) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const MIntegralTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(nu);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const MIntegralTable>(nu);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(nu, std::move(table)).first->second;
}

}  // namespace detail

/// U(x, t) = [1 + sign(x) I(|x| / t^{beta/2})] / 2
inline double tfde_cdf(OrderParam beta, double x, double t) {
  if (!(t > 0.0)) throw DomainError("tfde_cdf: t must be positive");
  const auto table = detail::m_integral_table(0.5 * beta.value());
  const double s = std::pow(t, 0.5 * beta.value());
  const double I = (*table)(std::fabs(x) / s);
  return x >= 0.0 ? 0.5 * (1.0 + I) : 0.5 * (1.0 - I);
}

/// Fundamental solution bundled with its order.
class TfdeSolution {
 public:
  explicit TfdeSolution(OrderParam beta) : beta_(beta), table_(detail::m_integral_table(0.5 * beta.value())) {}
  OrderParam beta() const { return beta_; }
  double pdf(double x, double t) const { return tfde_pdf(beta_, x, t); }
  double cdf(double x, double t) const {
    if (!(t > 0.0)) throw DomainError("tfde_cdf: t must be positive");
    const double I = (*table_)(std::fabs(x) / std::pow(t, 0.5 * beta_.value()));
    return x >= 0.0 ? 0.5 * (1.0 + I) : 0.5 * (1.0 - I);
  }

 private:
  OrderParam beta_;
  std::shared_ptr<const MIntegralTable> table_;
};

// ---------------------------------------------------------------------------

/// lambda tau^beta = mu h^2, linking time step tau and space step h.
struct ScalingRelation {
  double beta = 1.0;
  double mu = 2.0;       // jump variance
  double lambda = 1.0;   // rate (beta = 1) or c Gamma(1-beta)/beta

  /// c is the power-law tail constant of the waiting density, phi(t) ~ c t^{-(1+beta)}.
  static ScalingRelation from_tail(OrderParam beta, double c, double mu) {
    if (beta.is_one()) throw DomainError("from_tail: use from_rate for beta = 1");
    return {beta.value(), mu, c * std::tgamma(1.0 - beta.value()) / beta.value()};
  }
  static ScalingRelation from_rate(double rate, double mu) { return {1.0, mu, rate}; }
};

inline double scaling_map(const ScalingRelation& rel, double tau) {
  if (!(tau > 0.0)) throw DomainError("scaling_map: tau must be positive");
  return std::sqrt(rel.lambda * std::pow(tau, rel.beta) / rel.mu);
}

/// sup_x |P(x, t) - U(x, t)| over the grid, both one-sided limits included.
inline double diffusion_distance(const WaitingTimeLaw& process, std::shared_ptr<const JumpLaw> jumps, OrderParam beta,
                                 double t, const std::vector<double>& x_grid, double tail_tol = 1e-10) {
  if (x_grid.empty()) throw DomainError("diffusion_distance: empty grid");
  const SojournCDF P = sojourn_cdf(process, std::move(jumps), t, tail_tol);
  const TfdeSolution U(beta);
  double d = 0.0;
  for (double x : x_grid) {
    const double u = U.cdf(x, t);
    d = std::max(d, std::fabs(P(x) - u));
    d = std::max(d, std::fabs(P.left_limit(x) - u));
  }
  return d;
}

}  // namespace fracrenewal
