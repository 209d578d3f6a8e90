#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace qhs {

/// One SplitMix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Per-trial seed: splitmix64 applied to master_seed + (index + 1) * 0x9E3779B97F4A7C15.
/// Serial and parallel runs use the same function, so their logs match.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Seeded stream with platform-independent draws. mt19937_64's output
/// sequence is fixed by the standard; the std distributions are not, so the
/// bounded and real draws below are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qhs
