#include "qhs/subspace.hpp"

#include "qhs/groups.hpp"

#include <algorithm>
#include <limits>

namespace qhs {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // Fermat: a^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
  }
  return result;
}

// row -= factor * pivot_row (mod p)
void subtract_multiple(ModVector& row, const ModVector& pivot_row, std::uint64_t factor, std::uint64_t p) {
  if (factor == 0) return;
  for (std::size_t k = 0; k < row.size(); ++k) {
    row[k] = (row[k] + (p - mul_mod(factor, pivot_row[k], p))) % p;
  }
}

void scale(ModVector& row, std::uint64_t factor, std::uint64_t p) {
  for (auto& x : row) x = mul_mod(x, factor, p);
}

void check_field(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("Z_p^n needs a prime p, got " + std::to_string(p));
  if (p > std::numeric_limits<std::uint32_t>::max()) throw DomainError("p must be below 2^32");
}

bool is_zero(const ModVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

}  // namespace

void check_vector(std::uint64_t p, unsigned n, const ModVector& v) {
  if (v.size() != n) {
    throw DomainError("vector of length " + std::to_string(v.size()) + " is not in Z_" + std::to_string(p) + "^" +
                      std::to_string(n));
  }
  for (auto x : v) {
    if (x >= p) throw DomainError("coordinate " + std::to_string(x) + " is not reduced mod " + std::to_string(p));
  }
}

SubspaceBasis SubspaceBasis::span_of(std::uint64_t p, unsigned n, std::span<const ModVector> vectors) {
  check_field(p);
  std::vector<ModVector> m(vectors.begin(), vectors.end());
  for (const auto& v : m) check_vector(p, n, v);

  SubspaceBasis basis(p, n);
  std::size_t pivot_row = 0;
  for (unsigned col = 0; col < n && pivot_row < m.size(); ++col) {
    std::size_t r = pivot_row;
    while (r < m.size() && m[r][col] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[pivot_row]);
    scale(m[pivot_row], inverse_mod(m[pivot_row][col], p), p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != pivot_row) subtract_multiple(m[i], m[pivot_row], m[i][col], p);
    }
    basis.pivots_.push_back(col);
    ++pivot_row;
  }
  m.resize(pivot_row);
  basis.rows_ = std::move(m);
  return basis;
}

SubspaceBasis SubspaceBasis::zero(std::uint64_t p, unsigned n) { return span_of(p, n, {}); }

SubspaceBasis SubspaceBasis::full(std::uint64_t p, unsigned n) {
  std::vector<ModVector> unit(n, ModVector(n, 0));
  for (unsigned i = 0; i < n; ++i) unit[i][i] = 1;
  return span_of(p, n, unit);
}

bool SubspaceBasis::independent(std::uint64_t p, unsigned n, std::span<const ModVector> vectors) {
  return span_of(p, n, vectors).dimension() == vectors.size();
}

ModVector SubspaceBasis::reduce(const ModVector& v) const {
  check_vector(p_, n_, v);
  ModVector r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) subtract_multiple(r, rows_[i], r[pivots_[i]], p_);
  return r;
}

bool SubspaceBasis::contains(const ModVector& v) const { return is_zero(reduce(v)); }

SubspaceBasis orthogonal_complement(const SubspaceBasis& b) {
  const std::uint64_t p = b.prime();
  const unsigned n = b.ambient_dimension();
  const auto& pivots = b.pivots();

  std::vector<ModVector> generators;
  for (unsigned free_col = 0; free_col < n; ++free_col) {
    if (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) continue;
    ModVector y(n, 0);
    y[free_col] = 1;
    for (std::size_t i = 0; i < b.rows().size(); ++i) y[pivots[i]] = (p - b.rows()[i][free_col]) % p;
    generators.push_back(std::move(y));
  }
  return SubspaceBasis::span_of(p, n, generators);
}

SubspaceAccumulator::SubspaceAccumulator(std::uint64_t p, unsigned n) : p_(p), n_(n) { check_field(p); }

bool SubspaceAccumulator::offer(const ModVector& sample) {
  check_vector(p_, n_, sample);
  ++seen_;
  ModVector v = sample;
  for (std::size_t i = 0; i < rows_.size(); ++i) subtract_multiple(v, rows_[i], v[pivots_[i]], p_);

  const auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
  if (lead == v.end()) {
    ++streak_;
    return false;
  }
  const auto col = static_cast<unsigned>(lead - v.begin());
  scale(v, inverse_mod(*lead, p_), p_);
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), col) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, col);
  rows_.insert(rows_.begin() + pos, std::move(v));
  streak_ = 0;
  last_increase_ = seen_;
  return true;
}

bool SubspaceAccumulator::stable(std::uint64_t patience) const noexcept {
  return rank() == n_ || (seen_ > 0 && streak_ >= patience);
}

SubspaceBasis SubspaceAccumulator::span() const { return SubspaceBasis::span_of(p_, n_, rows_); }

SubspaceRecovery recover_subspace(std::uint64_t p, unsigned n, const std::function<ModVector()>& sampler,
                                  std::uint64_t max_samples, std::uint64_t patience) {
  if (patience < 1) throw std::invalid_argument("recover_subspace needs patience >= 1");
  SubspaceAccumulator acc(p, n);
  SubspaceRecovery out;
  while (acc.samples_seen() < max_samples) {
    ModVector s = sampler();
    acc.offer(s);
    out.samples.push_back(std::move(s));
    if (acc.stable(patience)) {
      out.sampled_span = acc.span();
      out.hidden = orthogonal_complement(*out.sampled_span);
      break;
    }
  }
  out.samples_to_stabilization = acc.samples_to_stabilization();
  return out;
}

std::optional<SubspaceBasis> recover_subspace(std::uint64_t p, unsigned n, std::span<const ModVector> samples,
                                              std::uint64_t max_samples, std::optional<std::uint64_t> patience) {
  const std::uint64_t limit = std::min<std::uint64_t>(max_samples, samples.size());
  std::size_t next = 0;
  // The sampler is never called more than `limit` times.
  auto result = recover_subspace(p, n, [&] { return samples[next++]; }, limit, patience.value_or(n));
  return result.hidden;
}

}  // namespace qhs
