#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qhs {

using ModVector = std::vector<std::uint64_t>;

/// A subspace of Z_p^n stored as the rows of its reduced row-echelon basis.
/// The RREF is unique per subspace, so == on two bases is subspace equality.
class SubspaceBasis {
 public:
  /// Span of `vectors` (dependent vectors are fine). Throws DomainError on a
  /// non-prime p, p >= 2^32, a wrong length or an unreduced coordinate.
  static SubspaceBasis span_of(std::uint64_t p, unsigned n, std::span<const ModVector> vectors);
  static SubspaceBasis zero(std::uint64_t p, unsigned n);
  static SubspaceBasis full(std::uint64_t p, unsigned n);

  /// True iff the vectors are linearly independent mod p.
  static bool independent(std::uint64_t p, unsigned n, std::span<const ModVector> vectors);

  std::uint64_t prime() const noexcept { return p_; }
  unsigned ambient_dimension() const noexcept { return n_; }
  unsigned dimension() const noexcept { return static_cast<unsigned>(rows_.size()); }
  const std::vector<ModVector>& rows() const noexcept { return rows_; }
  const std::vector<unsigned>& pivots() const noexcept { return pivots_; }

  bool contains(const ModVector& v) const;
  /// Canonical representative of the coset v + span: pivot coordinates cleared.
  ModVector reduce(const ModVector& v) const;

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

 private:
  SubspaceBasis(std::uint64_t p, unsigned n) : p_(p), n_(n) {}

  std::uint64_t p_;
  unsigned n_;
  std::vector<ModVector> rows_;
  std::vector<unsigned> pivots_;
};

/// {y : x.y = 0 mod p for all x in b}, in canonical form.
SubspaceBasis orthogonal_complement(const SubspaceBasis& b);

/// Validates that v is an element of Z_p^n; throws DomainError otherwise.
void check_vector(std::uint64_t p, unsigned n, const ModVector& v);

/// Incremental elimination over a stream of samples. Single owner.
class SubspaceAccumulator {
 public:
  SubspaceAccumulator(std::uint64_t p, unsigned n);

  /// Adds one sample; returns true when it raised the rank.
  bool offer(const ModVector& sample);

  unsigned rank() const noexcept { return static_cast<unsigned>(rows_.size()); }
  std::uint64_t samples_seen() const noexcept { return seen_; }
  /// Samples consumed up to and including the last rank increase.
  std::uint64_t samples_to_stabilization() const noexcept { return last_increase_; }
  std::uint64_t rank_free_streak() const noexcept { return streak_; }
  /// Stable once `patience` consecutive samples added nothing, or the span is everything.
  bool stable(std::uint64_t patience) const noexcept;

  SubspaceBasis span() const;

 private:
  std::uint64_t p_;
  unsigned n_;
  std::vector<ModVector> rows_;  // echelon, each normalized at its pivot
  std::vector<unsigned> pivots_;
  std::uint64_t seen_ = 0;
  std::uint64_t last_increase_ = 0;
  std::uint64_t streak_ = 0;
};

struct SubspaceRecovery {
  std::optional<SubspaceBasis> hidden;  // the candidate V = W^perp
  std::optional<SubspaceBasis> sampled_span;  // W
  std::vector<ModVector> samples;
  std::uint64_t samples_to_stabilization = 0;
};

/// Draws from `sampler` (assumed to sample V^perp) until W stabilizes, then
/// returns W^perp as the candidate V. Gives up after max_samples.
SubspaceRecovery recover_subspace(std::uint64_t p, unsigned n, const std::function<ModVector()>& sampler,
                                  std::uint64_t max_samples, std::uint64_t patience);

/// Same, over a finite sample list. Patience defaults to n.
std::optional<SubspaceBasis> recover_subspace(std::uint64_t p, unsigned n, std::span<const ModVector> samples,
                                              std::uint64_t max_samples, std::optional<std::uint64_t> patience = {});

}  // namespace qhs
