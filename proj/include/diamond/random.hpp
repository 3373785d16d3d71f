#pragma once

// Seeded random networks. Uniform draws are built directly from the 64-bit
// Mersenne Twister output so the streams are identical across standard
// libraries (the std:: distributions are implementation-defined).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "diamond/error.hpp"
#include "diamond/model.hpp"

namespace diamond {

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for trial `index` under `master`: splitmix64(master ^ splitmix64(index)).
/// Any single trial can be replayed from (master, index) alone.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::size_t integer(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = hi - lo + 1;
    return lo + static_cast<std::size_t>(engine_() % span);
  }

  /// Rayleigh(sigma) by inversion.
  double rayleigh(double sigma) { return sigma * std::sqrt(-2.0 * std::log1p(-uniform())); }

  /// exp(U[ln lo, ln hi]).
  double loguniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  double angle() { return uniform(0.0, 2.0 * 3.141592653589793); }

 private:
  std::mt19937_64 engine_;
};

struct GainDistribution {
  enum class Kind { rayleigh, loguniform };
  Kind kind = Kind::rayleigh;
  double sigma = 1.0;  // rayleigh
  double lo = 0.1;     // loguniform
  double hi = 10.0;

  static GainDistribution make_rayleigh(double sigma) {
    detail::require_finite_positive(sigma, "sigma");
    return {Kind::rayleigh, sigma, 0.0, 0.0};
  }
  static GainDistribution make_loguniform(double lo, double hi) {
    detail::require_finite_positive(lo, "lo");
    detail::require_finite_positive(hi, "hi");
    if (!(lo <= hi)) throw ValidationError("loguniform needs lo <= hi");
    return {Kind::loguniform, 0.0, lo, hi};
  }

  double draw(Rng& rng) const {
    if (kind == Kind::rayleigh) return rng.rayleigh(sigma);
    // Clamp guards the last-ulp rounding of exp(log(.)).
    return std::clamp(rng.loguniform(lo, hi), lo, hi);
  }
};

/// n relays with gains drawn i.i.d. from `dist`, source hop then destination hop per relay.
inline Network generate_network(std::size_t n, const GainDistribution& dist, double snr, std::uint64_t seed) {
  if (n < 1) throw ValidationError("n must be >= 1");
  detail::require_finite_positive(snr, "snr");
  Rng rng(seed);
  std::vector<RelayChannels> relays(n);
  for (auto& r : relays) {
    r.gain_s = dist.draw(rng);
    r.gain_d = dist.draw(rng);
  }
  return Network(snr, std::move(relays));
}

}  // namespace diamond
