#pragma once
#include <cstdint>

namespace fa2f::z3 {

// Regression bounds for the Z^3 constructions: the largest ratio seen over
// the seed battery at L=3 (q=0.3, unpolluted, 50 seeds per construction),
// times 1.5. Measured ratios are listed next to each bound.
struct FrozenConstants {
  double layer_moves = 100;        // moves / L, measured 66.7
  double layer_hamming = 67;       // hamming / L, measured 44.3
  std::size_t layer_residual = 20;  // fixed by the construction, measured 1
  double separator_moves = 1284;   // moves / L^2, measured 856
  double separator_extra = 14;     // (hamming - |X1| - |X2|) / L, measured 9
  double pass_moves = 3617;        // moves / L^2, measured 2411
  double pass_extra = 0;           // (hamming - |X1| - |X2| - |X'|) / L, measured 0
  double translate_moves = 68676;  // moves / L^2, measured 45784
  double translate_hamming = 575;  // hamming / L, measured 383
  double origin_moves = 70046;     // moves / (L^2 l), measured 46697
  double origin_hamming = 575;     // hamming / L, measured 383
  double origin_window = 1703516;  // window volume / L^3, measured 1135677
};

inline constexpr FrozenConstants kFrozen{};

}  // namespace fa2f::z3
