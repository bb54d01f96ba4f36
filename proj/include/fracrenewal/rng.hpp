#pragma once

// Random streams and the waiting-time variates.
//
// A stream is std::mt19937_64 seeded through std::seed_seq from the four
// 32-bit halves of (seed, stream id). Every walker of a simulation gets its
// own stream id, so results do not depend on scheduling.

#include <cmath>
#include <cstdint>
#include <random>

namespace fracrenewal {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    for (;;) {
      // 53 random mantissa bits
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  /// Standard exponential.
  double exponential() { return -std::log(uniform_open()); }

  /// Normal with the given standard deviation, Box-Muller (no cached state).
  double normal(double sigma = 1.0) {
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// One-sided stable variate with Laplace transform exp(-s^beta), 0 < beta < 1,
/// by Kanter's representation.
inline double positive_stable(double beta, RngStream& rng) {
  const double u = rng.uniform_open();
  const double e = rng.exponential();
  const double a = std::sin(beta * M_PI * u) / std::pow(std::sin(M_PI * u), 1.0 / beta);
  const double b = std::pow(std::sin((1.0 - beta) * M_PI * u) / e, (1.0 - beta) / beta);
  return a * b;
}

/// Waiting time with survival E_beta(-t^beta): E^{1/beta} times a stable variate.
inline double mittag_leffler_variate(double beta, RngStream& rng) {
  if (beta == 1.0) return rng.exponential();
  const double e = rng.exponential();
  return std::pow(e, 1.0 / beta) * positive_stable(beta, rng);
}

}  // namespace fracrenewal
