#include "qhs/simulator.hpp"

#include "qhs/tolerances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace qhs {

namespace {

std::vector<std::vector<std::uint64_t>> positions_by_label(const OracleInstance& o) {
  std::vector<std::vector<std::uint64_t>> positions(o.label_count());
  const auto table = o.table();
  for (std::uint64_t x = 0; x < table.size(); ++x) positions[table[x]].push_back(x);
  return positions;
}

// Index of element(a) - element(b) in the domain group.
class Difference {
 public:
  explicit Difference(const DomainSpec& d) : domain_(d) {
    if (d.is_product()) {
      for (std::uint64_t i = 0; i < d.size(); ++i) coords_.push_back(element_at(i, d).coords);
    }
  }

  std::uint64_t operator()(std::uint64_t a, std::uint64_t b) const {
    if (domain_.is_cyclic()) return a >= b ? a - b : a + domain_.size() - b;
    const std::uint64_t p = domain_.modulus(0);
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < coords_[a].size(); ++k) index = index * p + (coords_[a][k] + p - coords_[b][k]) % p;
    return index;
  }

 private:
  const DomainSpec& domain_;
  std::vector<std::vector<std::uint64_t>> coords_;
};

}  // namespace

double SpectralDistribution::total() const noexcept {
  double sum = 0.0;
  for (double p : prob) sum += p;
  return sum;
}

SpectralDistribution left_marginal(const OracleInstance& o) {
  const DomainSpec& domain = o.domain();
  const std::uint64_t size = domain.size();
  const Label labels = o.label_count();
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(size));

  SpectralDistribution dist{domain, std::vector<double>(size, 0.0), labels, std::vector<Complex>(size * labels)};
  std::vector<Complex> indicator(size);
  const auto table = o.table();
  for (Label s = 0; s < labels; ++s) {
    for (std::uint64_t x = 0; x < size; ++x) indicator[x] = table[x] == s ? Complex{amplitude, 0.0} : Complex{};
    transform_in_place(indicator, domain, Direction::forward);
    for (std::uint64_t j = 0; j < size; ++j) {
      dist.omega[j * labels + s] = indicator[j];
      dist.prob[j] += std::norm(indicator[j]);
    }
  }
  return dist;
}

SpectralDistribution marginal_probabilities(const OracleInstance& o) {
  const DomainSpec& domain = o.domain();
  const std::uint64_t size = domain.size();
  const auto positions = positions_by_label(o);

  double pair_cost = 0.0;
  for (const auto& pos : positions) pair_cost += static_cast<double>(pos.size()) * static_cast<double>(pos.size());
  const double fft_cost = 4.0 * static_cast<double>(o.label_count()) * static_cast<double>(size) *
                          (std::bit_width(size) + 1.0);
  if (pair_cost > fft_cost) {
    SpectralDistribution full = left_marginal(o);
    full.omega.clear();
    full.label_count = 0;
    return full;
  }

  // prob(j) = sum_D C(D) exp(-2 pi i <D, j>) / N^2, a real sequence because C(D) = C(-D).
  std::vector<std::uint64_t> counts(size, 0);
  const Difference diff(domain);
  for (const auto& pos : positions) {
    for (std::uint64_t a : pos) {
      for (std::uint64_t b : pos) ++counts[diff(a, b)];
    }
  }
  std::vector<Complex> spectrum(size);
  for (std::uint64_t k = 0; k < size; ++k) spectrum[k] = Complex{static_cast<double>(counts[k]), 0.0};
  transform_in_place(spectrum, domain, Direction::forward);

  const double scale = 1.0 / (static_cast<double>(size) * std::sqrt(static_cast<double>(size)));
  SpectralDistribution dist{domain, std::vector<double>(size), 0, {}};
  for (std::uint64_t j = 0; j < size; ++j) dist.prob[j] = std::max(0.0, spectrum[j].real() * scale);
  return dist;
}

BipartiteState full_state_evolve(const OracleInstance& o) {
  const DomainSpec& domain = o.domain();
  const Label labels = o.label_count();
  const std::uint64_t size = domain.size();
  if (size * labels > kTolerances.max_dense_entries) {
    throw StateTooLarge("dense state would have " + std::to_string(size * labels) + " entries (limit " +
                        std::to_string(kTolerances.max_dense_entries) + "); use left_marginal instead");
  }

  auto transform_left = [&](BipartiteState& state, Direction direction) {
    std::vector<Complex> column(size);
    for (Label s = 0; s < labels; ++s) {
      for (std::uint64_t x = 0; x < size; ++x) column[x] = state.at(x, s);
      transform_in_place(column, domain, direction);
      for (std::uint64_t x = 0; x < size; ++x) state.at(x, s) = column[x];
    }
  };

  BipartiteState psi(domain, labels);
  psi.at(0, 0) = 1.0;                        // |0>|0>
  transform_left(psi, Direction::inverse);   // F^-1 (x) 1
  psi = apply_oracle_unitary(psi, o);        // U_phi
  transform_left(psi, Direction::forward);   // F (x) 1
  return psi;
}

std::vector<double> left_register_probabilities(const BipartiteState& state) {
  std::vector<double> prob(state.domain.size(), 0.0);
  for (std::uint64_t x = 0; x < prob.size(); ++x) {
    for (Label s = 0; s < state.label_count; ++s) prob[x] += std::norm(state.at(x, s));
  }
  return prob;
}

OutcomeSampler::OutcomeSampler(const std::vector<double>& prob) : cdf_(prob.size()) {
  double running = 0.0;
  for (std::size_t j = 0; j < prob.size(); ++j) {
    if (!(prob[j] >= 0.0)) throw std::invalid_argument("probabilities must be non-negative");
    if (prob[j] > 0.0) last_positive_ = j;
    running += prob[j];
    cdf_[j] = running;
  }
  if (!(running > 0.0)) throw std::invalid_argument("cannot sample from an all-zero distribution");
}

std::uint64_t OutcomeSampler::draw(Rng& rng) const {
  const double u = rng.uniform() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return last_positive_;
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

std::uint64_t measure(const SpectralDistribution& dist, Rng& rng) { return OutcomeSampler(dist.prob).draw(rng); }

BinnedOutcome bin_frequency(std::uint64_t j, const DomainSpec& d, const BigInt& Q) {
  if (!d.has_grid()) throw DomainError("bin_frequency needs a grid domain, got " + d.describe());
  if (Q < 1) throw DomainError("bin_frequency needs Q >= 1");
  const auto& c = d.as_cyclic();
  if (j >= c.modulus) throw DomainError("frequency index out of range");
  const BigInt m_total = c.modulus;
  const BigInt frac_num = (BigInt(j) * c.grid->samples_per_unit) % m_total;  // frac(y) = frac_num / M
  return BinnedOutcome{frac_num * Q / m_total, Q};
}

std::set<std::uint64_t> spectrum_support(const SpectralDistribution& dist, double tol) {
  return spectrum_support(std::span<const double>(dist.prob), tol);
}

void write_distribution_csv(const SpectralDistribution& dist, std::ostream& out) {
  out << "index,frequency,probability\n";
  char buffer[40];
  for (std::uint64_t j = 0; j < dist.prob.size(); ++j) {
    out << j << ',';
    if (dist.domain.has_grid()) {
      out << grid_frequency(j, dist.domain).to_string();
    } else if (dist.domain.is_cyclic()) {
      out << normalize(BigInt(j), BigInt(dist.domain.size())).to_string();
    } else {
      const auto y = element_at(j, dist.domain);
      out << '(';
      for (std::size_t k = 0; k < y.coords.size(); ++k) out << (k ? " " : "") << y.coords[k];
      out << ")/" << dist.domain.modulus(0);
    }
    std::snprintf(buffer, sizeof buffer, "%.17g", dist.prob[j]);
    out << ',' << buffer << '\n';
  }
}

}  // namespace qhs
