#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace qbat {

// Reproducible RNG: mt19937_64 (sequence pinned by the C++ standard) seeded
// through SplitMix64 mixing of (seed, stream label). Gaussians use the
// Marsaglia polar method so golden digests do not depend on the standard
// library's normal_distribution implementation.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  // Streams with distinct labels are independent for all practical purposes;
  // compose labels hierarchically, e.g. "instance/3/restart/7".
  explicit Rng(std::uint64_t seed, const std::string& stream = "") {
    std::uint64_t x = seed ^ fnv1a(stream);
    gen_.seed(splitmix64(x));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via the polar method (one cached spare).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qbat
