#pragma once

#include "qhs/groups.hpp"
#include "qhs/simulator.hpp"
#include "qhs/subspace.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qhs {

/// [a0; a1, ..., ak]. Canonical: every a_i >= 1 for i >= 1, and the last
/// quotient is >= 2 whenever there is more than one.
struct ContinuedFraction {
  std::vector<BigInt> quotients;

  bool is_canonical() const;
  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Canonical expansion of m/Q by Euclid's algorithm. Q must be positive.
ContinuedFraction cf_expand(const BigInt& m, const BigInt& Q);

/// h_k = a_k h_{k-1} + h_{k-2}, k_k = a_k k_{k-1} + k_{k-2}.
std::vector<Rational> convergents(const ContinuedFraction& cf);

/// The convergent of m/Q with the largest denominator <= denom_bound.
/// Empty when only 0/1 qualifies but m != 0. When Q >= 2 * bound^2 and
/// m = floor(Q*n/P) with P <= bound, this is exactly n/P.
std::optional<Rational> recover_rational(const BinnedOutcome& outcome, const BigInt& denom_bound);

/// gcd of every outcome, folding with gcd(0, x) = x. An all-zero list gives
/// 0, which callers treat as "retry". Throws on an empty list.
std::uint64_t gcd_recover(std::span<const std::uint64_t> outcomes);

}  // namespace qhs
