#pragma once

// Process-agnostic renewal algebra: the waiting-time contract, counting
// probabilities, k-fold laws, renewal function and a discrete convolution
// oracle for cross-checks.

#include <fracrenewal/errors.hpp>
#include <fracrenewal/rng.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fracrenewal {

struct LawDescriptor {
  std::string process;  // "poisson", "ml", "wright" or user defined
  double beta = 1.0;
  double lambda = 1.0;

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << process << "(beta=" << beta << ", lambda=" << lambda << ")";
    return os.str();
  }
};

/// Waiting-time distribution of a renewal process.
class WaitingTimeLaw {
 public:
  virtual ~WaitingTimeLaw() = default;

  virtual double survival(double t) const = 0;
  virtual double density(double t) const = 0;
  virtual double cdf(double t) const { return 1.0 - survival(t); }

  /// Law of the k-th event time t_k.
  virtual double kfold_density(int k, double t) const = 0;
  virtual double kfold_cdf(int k, double t) const = 0;

  /// P(N(t) = k) when the law knows it in closed form.
  virtual std::optional<double> counting_prob_closed(int /*k*/, double /*t*/) const { return std::nullopt; }
  /// m(t) when the law knows it in closed form.
  virtual std::optional<double> renewal_closed(double /*t*/) const { return std::nullopt; }

  virtual double sample(RngStream& rng) const = 0;
  virtual LawDescriptor descriptor() const = 0;
  /// True if the waiting time has point masses (density() then throws).
  virtual bool has_atoms() const { return false; }
};

// ---------------------------------------------------------------------------

class TimeGrid {
 public:
  enum class Spacing { uniform, geometric, arbitrary };

  explicit TimeGrid(std::vector<double> points, Spacing spacing = Spacing::arbitrary)
      : points_(std::move(points)), spacing_(spacing) {
    if (points_.empty()) throw DomainError("time grid is empty");
    if (!(points_.front() >= 0.0)) throw DomainError("time grid must start at a nonnegative point");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (!(points_[i] > points_[i - 1])) throw DomainError("time grid must be strictly increasing");
    }
  }

  static TimeGrid uniform(double a, double b, std::size_t n) {
    if (n < 2 || !(b > a)) throw DomainError("uniform grid needs n >= 2 and b > a");
    std::vector<double> p(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p[i] = a + h * static_cast<double>(i);
    p.back() = b;
    return TimeGrid(std::move(p), Spacing::uniform);
  }

  static TimeGrid geometric(double a, double b, std::size_t n) {
    if (n < 2 || !(a > 0.0) || !(b > a)) throw DomainError("geometric grid needs n >= 2 and 0 < a < b");
    std::vector<double> p(n);
    const double la = std::log(a);
    const double step = (std::log(b) - la) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p[i] = std::exp(la + step * static_cast<double>(i));
    p.front() = a;
    p.back() = b;
    return TimeGrid(std::move(p), Spacing::geometric);
  }

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  Spacing spacing() const { return spacing_; }
  double step() const {
    if (spacing_ != Spacing::uniform) throw DomainError("step() needs a uniform grid");
    return points_[1] - points_[0];
  }

 private:
  std::vector<double> points_;
  Spacing spacing_;
};

// ---------------------------------------------------------------------------
// Convolution oracle

struct OracleResult {
  std::vector<double> t;
  std::vector<double> density;   // f_k on the grid (0 at t = 0 for k >= 2)
  std::vector<double> cdf;       // F_k
  std::vector<double> counting;  // v_k = P(N(t) = k)
  double self_check = 0.0;       // max deviation from the half-step run
  bool coarse = false;           // self_check above 1e-3
};

namespace detail {

struct OracleLevels {
  std::vector<double> f;
  std::vector<double> F;
  std::vector<double> v;
};

// Product trapezoid on a uniform grid t_i = i h. Each convolution integral
// over [0, t_i] is split at t_m, m = i/2, so that the weakly singular factor
// near the origin is always integrated against exact cdf increments:
//   int_0^{t_m} g(t_i - s) dPhi(s)  +  int_0^{t_i - t_m} phi(t_i - u) dG(u).
inline OracleLevels oracle_pass(const WaitingTimeLaw& law, int k, double h, std::size_t n) {
  std::vector<double> phi(n, 0.0), Phi(n), Psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = h * static_cast<double>(i);
    Psi[i] = law.survival(t);
    Phi[i] = law.cdf(t);
    if (i > 0) phi[i] = law.density(t);
  }
  // a finite density at the origin is used; a singular one is left at 0
  if (const double d0 = law.density(0.0); std::isfinite(d0)) phi[0] = d0;
  std::vector<double> f = phi;
  std::vector<double> F = Phi;
  for (int level = 2; level <= k; ++level) {
    std::vector<double> nf(n, 0.0), nF(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t m = i / 2;
      double dens = 0.0;
      double cum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double dPhi = Phi[j + 1] - Phi[j];
        dens += 0.5 * (f[i - j] + f[i - j - 1]) * dPhi;
        cum += 0.5 * (F[i - j] + F[i - j - 1]) * dPhi;
      }
      for (std::size_t j = 0; j < i - m; ++j) {
        const double dF = F[j + 1] - F[j];
        dens += 0.5 * (phi[i - j] + phi[i - j - 1]) * dF;
        cum += 0.5 * h * (phi[i - j] * F[j] + phi[i - j - 1] * F[j + 1]);
      }
      nf[i] = dens;
      nF[i] = cum;
    }
    f = std::move(nf);
    F = std::move(nF);
  }
  std::vector<double> v(n, 0.0);
  v[0] = k == 0 ? 1.0 : 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (k == 0) {
      v[i] = Psi[i];
      continue;
    }
    const std::size_t m = i / 2;
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += 0.5 * (Psi[i - j] + Psi[i - j - 1]) * (F[j + 1] - F[j]);
    for (std::size_t j = 0; j < i - m; ++j) acc += 0.5 * h * (f[i - j] * Psi[j] + f[i - j - 1] * Psi[j + 1]);
    v[i] = acc;
  }
  return {std::move(f), std::move(F), std::move(v)};
}

}  // namespace detail

/// k-fold waiting-time law (and counting probability) on a uniform grid
/// starting at 0, by repeated discrete convolution. Test oracle only.
inline OracleResult convolution_oracle(const WaitingTimeLaw& law, int k, const TimeGrid& grid) {
  if (k < 1) throw DomainError("convolution_oracle: k must be >= 1");
  if (grid.spacing() != TimeGrid::Spacing::uniform || grid[0] != 0.0) {
    throw DomainError("convolution_oracle: needs a uniform grid starting at 0");
  }
  if (law.has_atoms()) throw AtomDistributionError("convolution_oracle: waiting law has atoms");
  const std::size_t n = grid.size();
  const double h = grid.step();
  detail::OracleLevels coarse = detail::oracle_pass(law, k, h, n);
  detail::OracleLevels fine = detail::oracle_pass(law, k, 0.5 * h, 2 * n - 1);

  OracleResult out;
  out.t = grid.points();
  out.density = coarse.f;
  out.cdf = coarse.F;
  out.counting = coarse.v;
  double scale = 0.0;
  double diff = 0.0;
  // Near a weakly singular origin the relative resolution of a uniform grid
  // is poor whatever h is, so the check covers t >= t_max / 10 only.
  for (std::size_t i = std::max<std::size_t>(2, (n - 1) / 10); i < n; ++i) {
    scale = std::max(scale, std::fabs(fine.f[2 * i]));
    diff = std::max(diff, std::fabs(fine.f[2 * i] - coarse.f[i]));
  }
  out.self_check = scale > 0.0 ? diff / scale : diff;
  out.coarse = out.self_check > 1e-3;
  return out;
}

// ---------------------------------------------------------------------------

/// P(N(t) = k).
inline double counting_prob(const WaitingTimeLaw& law, int k, double t) {
  if (k < 0) throw DomainError("counting_prob: k must be >= 0");
  if (!(t >= 0.0)) throw DomainError("counting_prob: t must be >= 0");
  if (k == 0) return law.survival(t);
  if (t == 0.0) return 0.0;
  if (auto v = law.counting_prob_closed(k, t)) return *v;
  const OracleResult r = convolution_oracle(law, k, TimeGrid::uniform(0.0, t, 2001));
  return r.counting.back();
}

struct CountingSeries {
  double t = 0.0;
  std::vector<double> values;  // v_0 .. v_K
  double tail_bound = 0.0;     // 1 - sum of values

  int K() const { return static_cast<int>(values.size()) - 1; }
  double partial_sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

inline constexpr int kCountingCap = 10000;

/// v_0 .. v_K with K the first index whose partial sum leaves at most tail_tol.
inline CountingSeries counting_series(const WaitingTimeLaw& law, double t, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("counting_series: tail_tol must lie in (0, 1)");
  if (!(t >= 0.0)) throw DomainError("counting_series: t must be >= 0");
  CountingSeries out;
  out.t = t;
  if (t == 0.0) {
    out.values = {1.0};
    return out;
  }
  double partial = 0.0;
  for (int k = 0; k <= kCountingCap; ++k) {
    const double v = counting_prob(law, k, t);
    out.values.push_back(v);
    partial += v;
    const double tail = std::max(0.0, 1.0 - partial);
    if (tail <= tail_tol) {
      out.tail_bound = tail;
      return out;
    }
  }
  throw TruncationError("counting_series: index cap reached", std::max(0.0, 1.0 - partial));
}

inline constexpr long kRenewalCap = 1000000;

/// m(t) = E N(t).
inline double renewal_function(const WaitingTimeLaw& law, double t, double abs_tol = 1e-12) {
  if (!(t >= 0.0)) throw DomainError("renewal_function: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (auto m = law.renewal_closed(t)) return *m;
  double sum = 0.0;
  double prev = INFINITY;
  for (long k = 1; k <= kRenewalCap; ++k) {
    const double Fk = law.kfold_cdf(static_cast<int>(k), t);
    sum += Fk;
    if (Fk < abs_tol) {
      // geometric tail from the last two addends
      if (prev > Fk && std::isfinite(prev)) {
        const double q = Fk / prev;
        sum += Fk * q / (1.0 - q);
      }
      return sum;
    }
    prev = Fk;
  }
  throw SlowConvergenceError("renewal_function: addend cap reached");
}

}  // namespace fracrenewal
