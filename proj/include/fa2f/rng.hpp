#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace fa2f {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 seeded through splitmix64(seed ^ stream). Draws are converted
// by hand so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : eng_(splitmix64(seed ^ stream)) {}

  std::uint64_t next() { return eng_(); }
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  // Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    for (;;) {
      std::uint64_t x = eng_();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      auto lo = static_cast<std::uint64_t>(m);
      if (lo >= n || lo >= (-n) % n) return static_cast<std::uint64_t>(m >> 64);
    }
  }

 private:
  std::mt19937_64 eng_;
};

namespace streams {
inline constexpr std::uint64_t environment = 0;
inline constexpr std::uint64_t configuration = 1;
inline constexpr std::uint64_t dynamics = 2;
inline constexpr std::uint64_t replica_base = 1000;
}  // namespace streams

}  // namespace fa2f
