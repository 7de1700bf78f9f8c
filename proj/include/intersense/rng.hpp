// Seedable random streams. Every (seed, run, channel, purpose) tuple maps to
// its own 64-bit Mersenne Twister whose seed is mixed with SplitMix64, so
// runs can execute in any order or in parallel and still reproduce.

#ifndef INTERSENSE_RNG_HPP_
#define INTERSENSE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace intersense {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class StreamPurpose : std::uint64_t { kTrace = 1, kSensing = 2 };

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t run, std::uint64_t channel,
                                 StreamPurpose purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ run);
  h = splitmix64(h ^ channel);
  return splitmix64(h ^ static_cast<std::uint64_t>(purpose));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential variate by inversion.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace intersense

#endif  // INTERSENSE_RNG_HPP_
