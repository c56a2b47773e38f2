#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace chase {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seeded random stream. Substreams are derived from the construction seed
// alone, not from the stream position, so replicas and parallel workers get
// reproducible, order-independent randomness.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Inverse-transform draw; +infinity when rate <= 0.
  double exponential(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-uniform()) / rate;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

  std::uint64_t seed() const { return seed_; }

  Rng substream(std::uint64_t id) const {
    std::uint64_t s = seed_;
    std::uint64_t h = splitmix64(s);
    std::uint64_t t = h ^ (id * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    return Rng(splitmix64(t));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace chase
