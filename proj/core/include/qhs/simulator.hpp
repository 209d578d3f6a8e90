#pragma once

#include "qhs/groups.hpp"
#include "qhs/oracle.hpp"
#include "qhs/random.hpp"
#include "qhs/spectral.hpp"

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <vector>

namespace qhs {

/// Left-register measurement distribution after the inverse-DFT, U_phi, DFT sandwich.
struct SpectralDistribution {
  DomainSpec domain;
  std::vector<double> prob;
  /// Value-class amplitudes: omega[j * label_count + s] is the s-component of
  /// Omega(j). Empty when the distribution came from the probability-only path.
  Label label_count = 0;
  std::vector<Complex> omega;

  bool has_omega() const noexcept { return !omega.empty(); }
  Complex omega_at(std::uint64_t j, Label s) const { return omega.at(j * label_count + s); }
  double total() const noexcept;
};

/// Binned eigenvalue m/Q of the floor(Q*y)/Q observable.
struct BinnedOutcome {
  BigInt m;
  BigInt Q;
  friend bool operator==(const BinnedOutcome&, const BinnedOutcome&) = default;
};

class StateTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exact distribution with omega: one forward DFT of each label's indicator.
SpectralDistribution left_marginal(const OracleInstance& o);

/// Same probabilities without omega. Uses the label-equality autocorrelation
/// C(D) = #{x : table(x) = table(x + D)}, whose DFT is the marginal up to
/// scale, when that is cheaper than one DFT per label.
SpectralDistribution marginal_probabilities(const OracleInstance& o);

/// Literal evolution of |0>|0> on the (|domain| * L)-dimensional product
/// state. Throws StateTooLarge above kTolerances.max_dense_entries.
BipartiteState full_state_evolve(const OracleInstance& o);
/// Sum over the value register of |amplitude|^2.
std::vector<double> left_register_probabilities(const BipartiteState& state);

/// Inverse-CDF sampler over a fixed probability table.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const std::vector<double>& prob);
  std::uint64_t draw(Rng& rng) const;

 private:
  std::vector<double> cdf_;
  std::uint64_t last_positive_ = 0;
};

/// One draw from dist; consumes exactly one value from rng.
std::uint64_t measure(const SpectralDistribution& dist, Rng& rng);

/// m = floor(Q * frac(j*R/M)), computed in exact integer arithmetic.
/// Throws DomainError when the domain has no grid.
BinnedOutcome bin_frequency(std::uint64_t j, const DomainSpec& d, const BigInt& Q);

std::set<std::uint64_t> spectrum_support(const SpectralDistribution& dist, double tol);

/// CSV with header "index,frequency,probability". Frequencies are exact:
/// "jR/M" on grids, "j/M" on plain cyclic domains, "(y1 ... yn)/p" on Z_p^n.
void write_distribution_csv(const SpectralDistribution& dist, std::ostream& out);

}  // namespace qhs
