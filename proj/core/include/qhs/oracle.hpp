#pragma once

#include "qhs/groups.hpp"
#include "qhs/random.hpp"
#include "qhs/spectral.hpp"
#include "qhs/subspace.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace qhs {

using Label = std::uint32_t;

struct HiddenPeriod {
  std::uint64_t period = 1;
  friend bool operator==(const HiddenPeriod&, const HiddenPeriod&) = default;
};

struct HiddenSubspace {
  std::vector<ModVector> basis;
  friend bool operator==(const HiddenSubspace&, const HiddenSubspace&) = default;
};

using HiddenStructure = std::variant<HiddenPeriod, HiddenSubspace>;

class Verification;

/// A hidden-structure function as a total lookup table over its domain.
///
/// The ground truth (period or subspace basis) is stored alongside the table
/// but is only reachable through `Verification`; the algorithm pipelines see
/// the domain, the table and the label count, nothing else.
class OracleInstance {
 public:
  /// Validates shape only: table length, labels below label_count, and that
  /// the ground-truth kind matches the domain kind. Whether the table really
  /// has the claimed structure is answered by verify_hidden_structure.
  OracleInstance(DomainSpec domain, std::vector<Label> table, Label label_count, HiddenStructure truth,
                 bool injective);

  const DomainSpec& domain() const noexcept { return domain_; }
  std::span<const Label> table() const noexcept { return table_; }
  Label label_count() const noexcept { return label_count_; }
  /// Whether distinct cosets are claimed to carry distinct labels.
  bool injective() const noexcept { return injective_; }

 private:
  friend class Verification;

  DomainSpec domain_;
  std::vector<Label> table_;
  Label label_count_;
  HiddenStructure truth_;
  bool injective_;
};

/// The only door to an oracle's ground truth. Used for scoring, checks and
/// serialization; never by the pipelines that recover the structure.
class Verification {
 public:
  static const HiddenStructure& ground_truth(const OracleInstance& o) noexcept { return o.truth_; }
  static bool period_is(const OracleInstance& o, std::uint64_t period);
  static bool subspace_is(const OracleInstance& o, const SubspaceBasis& candidate);
};

/// Injective (or not) oracle of minimal period d on a cyclic domain.
/// Throws DomainError("period must divide domain size") when d does not divide M.
OracleInstance make_periodic_oracle(const DomainSpec& domain, std::uint64_t d, bool injective, Rng& rng);
OracleInstance make_periodic_oracle(std::uint64_t M, std::uint64_t d, bool injective, Rng& rng);

/// Oracle on Z_p^n constant exactly on the cosets of span(basis), with a
/// random distinct label per coset. Throws DomainError on a dependent basis.
OracleInstance make_subspace_oracle(std::uint64_t p, unsigned n, std::span<const ModVector> basis, Rng& rng);

/// Does the table factor through the cosets of the claimed structure (and
/// take distinct values on distinct cosets, when injectivity is claimed)?
bool verify_hidden_structure(const OracleInstance& o);

/// Smallest d | M with table(k + d mod M) == table(k) for all k.
std::uint64_t minimal_period(const OracleInstance& o);
std::uint64_t minimal_period(std::span<const Label> table);

/// Dense state over (domain x Z_L), entry (x, s) at x * L + s.
struct BipartiteState {
  DomainSpec domain;
  Label label_count;
  std::vector<Complex> amplitudes;

  BipartiteState(DomainSpec d, Label labels);
  BipartiteState(DomainSpec d, Label labels, std::vector<Complex> values);

  Complex& at(std::uint64_t x, Label s) { return amplitudes[x * label_count + s]; }
  const Complex& at(std::uint64_t x, Label s) const { return amplitudes[x * label_count + s]; }
};

/// |x>|s> -> |x>|s + table(x) mod L>. Throws DomainError on a register mismatch.
BipartiteState apply_oracle_unitary(const BipartiteState& state, const OracleInstance& o);

// Serialized form (see docs/formats.md):
// {"domain": {...}, "table": [...], "label_count": L, "injective": b,
//  "ground_truth": {"kind": "period", "d": 4} | {"kind": "subspace", "basis": [[...]]}}
nlohmann::ordered_json domain_to_json(const DomainSpec& d);
DomainSpec domain_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json oracle_to_json(const OracleInstance& o);
OracleInstance oracle_from_json(const nlohmann::ordered_json& j);

}  // namespace qhs
