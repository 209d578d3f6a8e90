#include "qhs/postprocess.hpp"

#include <stdexcept>

namespace qhs {

bool ContinuedFraction::is_canonical() const {
  if (quotients.empty() || quotients.front() < 0) return false;
  for (std::size_t i = 1; i < quotients.size(); ++i) {
    if (quotients[i] < 1) return false;
  }
  return quotients.size() == 1 || quotients.back() >= 2;
}

ContinuedFraction cf_expand(const BigInt& m, const BigInt& Q) {
  if (Q < 1) throw std::invalid_argument("cf_expand needs Q >= 1");
  if (m < 0) throw std::invalid_argument("cf_expand needs m >= 0");
  ContinuedFraction cf;
  BigInt num = m;
  BigInt den = Q;
  while (den != 0) {
    BigInt q = num / den;
    BigInt r = num - q * den;
    cf.quotients.push_back(std::move(q));
    num = std::move(den);
    den = std::move(r);
  }
  return cf;
}

std::vector<Rational> convergents(const ContinuedFraction& cf) {
  if (!cf.is_canonical()) throw std::invalid_argument("convergents needs a canonical continued fraction");
  std::vector<Rational> out;
  out.reserve(cf.quotients.size());
  BigInt h_prev2 = 0, h_prev1 = 1;
  BigInt k_prev2 = 1, k_prev1 = 0;
  for (const BigInt& a : cf.quotients) {
    BigInt h = a * h_prev1 + h_prev2;
    BigInt k = a * k_prev1 + k_prev2;
    out.push_back(normalize(h, k));
    h_prev2 = std::move(h_prev1);
    h_prev1 = std::move(h);
    k_prev2 = std::move(k_prev1);
    k_prev1 = std::move(k);
  }
  return out;
}

std::optional<Rational> recover_rational(const BinnedOutcome& outcome, const BigInt& denom_bound) {
  if (denom_bound < 1) throw std::invalid_argument("recover_rational needs denom_bound >= 1");
  if (outcome.m < 0 || outcome.m >= outcome.Q) throw std::invalid_argument("recover_rational needs 0 <= m < Q");

  std::optional<Rational> best;
  // Denominators increase along the convergents, so keep the last one in range.
  for (Rational& c : convergents(cf_expand(outcome.m, outcome.Q))) {
    if (c.den() > denom_bound) break;
    best = std::move(c);
  }
  if (best && best->num() == 0 && outcome.m != 0) return std::nullopt;
  return best;
}

std::uint64_t gcd_recover(std::span<const std::uint64_t> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("gcd_recover needs at least one outcome");
  std::uint64_t g = 0;
  for (std::uint64_t v : outcomes) g = gcd(g, v);
  return g;
}

}  // namespace qhs
