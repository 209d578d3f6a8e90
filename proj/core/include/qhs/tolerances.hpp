#pragma once

namespace qhs {

/// Every numerical tolerance used by the library and its checks.
struct Tolerances {
  /// Sum of a spectral distribution must be 1 within this.
  double probability_sum = 1e-12;
  /// Probabilities at or below this are treated as structural zeros.
  double support = 1e-12;
  /// Norm preservation and inverse-identity of transforms.
  double unitarity = 1e-12;
  /// Agreement between independently computed amplitudes/probabilities.
  double agreement = 1e-12;
  /// Largest dense bipartite state full_state_evolve will build.
  unsigned long long max_dense_entries = 1ULL << 20;
};

inline constexpr Tolerances kTolerances{};

}  // namespace qhs
