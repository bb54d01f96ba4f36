#pragma once

// Monte Carlo: waiting-time sampling, counting-process and CTRW trajectories,
// and the one-sample Kolmogorov-Smirnov statistic.

#include <fracrenewal/compound.hpp>
#include <fracrenewal/renewal.hpp>
#include <fracrenewal/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace fracrenewal {

struct TrajectoryBatch {
  double t = 0.0;
  std::vector<long> counts;        // N(t) per walker
  std::vector<double> positions;   // x(t) per walker (all 0 for counting runs)

  std::size_t walkers() const { return counts.size(); }
  double mean_count() const {
    double s = 0.0;
    for (long n : counts) s += static_cast<double>(n);
    return counts.empty() ? 0.0 : s / static_cast<double>(counts.size());
  }
};

inline constexpr long kEventCap = 100000000;

inline double sample_wait(const WaitingTimeLaw& law, RngStream& rng) { return law.sample(rng); }

namespace detail {

inline TrajectoryBatch simulate(const WaitingTimeLaw& law, const JumpLaw* jumps, double t, std::size_t walkers,
                                std::uint64_t seed) {
  if (!(t >= 0.0)) throw DomainError("simulate: t must be >= 0");
  if (walkers < 1) throw DomainError("simulate: walkers must be >= 1");
  TrajectoryBatch out;
  out.t = t;
  out.counts.resize(walkers);
  out.positions.assign(walkers, 0.0);
  for (std::size_t w = 0; w < walkers; ++w) {
    RngStream rng(seed, w);
    double clock = 0.0;
    long n = 0;
    double x = 0.0;
    for (;;) {
      clock += law.sample(rng);
      // events at exactly t are counted: N(t) = max{k : t_k <= t}
      if (clock > t) break;
      ++n;
      if (jumps) x += jumps->sample(rng);
      if (n > kEventCap) throw RunawayError("simulate: per-walker event cap exceeded");
    }
    out.counts[w] = n;
    out.positions[w] = x;
  }
  return out;
}

}  // namespace detail

/// N(t) for independent walkers; walker w draws from RngStream(seed, w).
inline TrajectoryBatch simulate_counting(const WaitingTimeLaw& law, double t, std::size_t walkers, std::uint64_t seed) {
  return detail::simulate(law, nullptr, t, walkers, seed);
}

/// N(t) and x(t) = sum of N(t) jumps, x(0) = 0.
inline TrajectoryBatch simulate_ctrw(const WaitingTimeLaw& law, const JumpLaw& jumps, double t, std::size_t walkers,
                                     std::uint64_t seed) {
  return detail::simulate(law, &jumps, t, walkers, seed);
}

/// sup_x |F_n(x) - F(x)|; ties and atoms of F are handled through left limits.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double x = samples[i];
    const double below = cdf(std::nextafter(x, -INFINITY));
    const double at = cdf(x);
    d = std::max(d, std::fabs(static_cast<double>(i) / n - below));
    d = std::max(d, std::fabs(static_cast<double>(j) / n - at));
    i = j;
  }
  return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

}  // namespace fracrenewal
