#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace oamcmab {

// SplitMix64 finalizer. Used to derive independent child seeds from a master
// seed: child(master, k) = splitmix64(master + (k + 1) * golden_gamma).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Random stream backed by mt19937_64. All derived variates are computed from
// raw 64-bit words here rather than through <random> distributions, whose
// algorithms are implementation-defined; this keeps outputs identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Number of independent trials up to and including the first success.
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 1;
    const double u = uniform();
    const double k = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(k < 1e18)) return static_cast<std::uint64_t>(1e18);
    return 1 + static_cast<std::uint64_t>(k);
  }

  // Index drawn with probability weights[i] / total. Zero-weight entries are
  // never returned.
  std::size_t categorical(std::span<const double> weights, double total) {
    const double target = uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      last_positive = i;
      if (target < acc) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oamcmab
