#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace fa2f {

struct PathBound {
  double log10_value = 0.0;
  double value = 0.0;  // +inf when it overflows a double
};

namespace detail {

inline double log10_binom(std::int64_t v, std::int64_t d) {
  return (std::lgamma(double(v) + 1) - std::lgamma(double(d) + 1) - std::lgamma(double(v - d) + 1)) / std::log(10.0);
}

// Exact binomial when it fits in 64 bits, else nullopt-like -1.
inline double binom_double(std::int64_t v, std::int64_t d) {
  d = std::min(d, v - d);
  unsigned __int128 r = 1;
  for (std::int64_t k = 1; k <= d; ++k) {
    r = r * static_cast<unsigned __int128>(v - d + k) / static_cast<unsigned __int128>(k);
    if (r > (static_cast<unsigned __int128>(1) << 100)) return -1.0;
  }
  return static_cast<double>(r);
}

inline PathBound path_bound_with_exponent(double N, std::int64_t D, std::int64_t V, double q, std::int64_t qexp) {
  if (D < 0 || V < 0 || D > V) throw std::invalid_argument("need 0 <= D <= V");
  if (!(N >= 1)) throw std::invalid_argument("need N >= 1");
  if (!(q > 0 && q < 1)) throw std::invalid_argument("need 0 < q < 1");
  PathBound b;
  b.log10_value = 2 * std::log10(N) + log10_binom(V, D) + double(D) * std::log10(2.0) - double(qexp) * std::log10(q);
  double c = binom_double(V, D);
  if (c >= 0 && b.log10_value < 300) {
    // direct product, exact for dyadic q and small arguments
    b.value = N * N * c * std::ldexp(1.0, static_cast<int>(D)) * std::pow(q, -static_cast<double>(qexp));
  } else {
    b.value = b.log10_value < 308 ? std::pow(10.0, b.log10_value) : std::numeric_limits<double>::infinity();
  }
  return b;
}

}  // namespace detail

// N^2 * C(V, D) * 2^D * q^(-D-1)
inline PathBound eval_path_bound(double N, std::int64_t D, std::int64_t V, double q) {
  return detail::path_bound_with_exponent(N, D, V, q, D + 1);
}

struct HittingBound {
  double time_threshold_log10 = 0.0;
  double time_threshold = 0.0;
  double prob_bound = 0.0;
};

// Threshold N^2 C(V,D) 2^D q^(-D-2); probability bound min(1, 2q + delta + sqrt(delta)).
inline HittingBound eval_hitting_bound(double N, std::int64_t D, std::int64_t V, double q, double delta) {
  if (!(delta >= 0 && delta <= 1)) throw std::invalid_argument("delta must lie in [0,1]");
  auto b = detail::path_bound_with_exponent(N, D, V, q, D + 2);
  return {b.log10_value, b.value, std::min(1.0, 2 * q + delta + std::sqrt(delta))};
}

}  // namespace fa2f
