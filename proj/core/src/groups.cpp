#include "qhs/groups.hpp"

#include <charconv>
#include <limits>
#include <sstream>

namespace qhs {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f <= n / f; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

Rational normalize(BigInt num, BigInt den) {
  if (den == 0) throw InvalidRational("invalid rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const BigInt g = gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(std::move(num), std::move(den), 0);
}

std::string Rational::to_string() const { return num_.str() + "/" + den_.str(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return normalize(BigInt(std::string(text)), 1);
    return normalize(BigInt(std::string(text.substr(0, slash))),
                     BigInt(std::string(text.substr(slash + 1))));
  } catch (const InvalidRational&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidRational("invalid rational literal: '" + std::string(text) + "'");
  }
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
  return normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return normalize(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return normalize(a.num_ * b.num_, a.den_ * b.den_);
}

Rational Rational::abs() const { return num_ < 0 ? Rational(-num_, den_, 0) : *this; }

DomainSpec DomainSpec::cyclic(std::uint64_t modulus, std::optional<Grid> grid) {
  if (modulus < 1) throw DomainError("cyclic domain needs M >= 1");
  if (grid) {
    if (grid->samples_per_unit < 1) throw DomainError("grid needs R >= 1");
    if (modulus % grid->samples_per_unit != 0) {
      throw DomainError("grid domain needs M to be a multiple of R");
    }
  }
  return DomainSpec(CyclicDomain{modulus, grid}, modulus);
}

DomainSpec DomainSpec::product(std::uint64_t prime, unsigned dimension) {
  if (!is_prime(prime)) throw DomainError("product domain needs a prime modulus, got " + std::to_string(prime));
  if (dimension < 1) throw DomainError("product domain needs n >= 1");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < dimension; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / prime) {
      throw DomainError("product domain p^n overflows 64 bits");
    }
    size *= prime;
  }
  return DomainSpec(ProductDomain{prime, dimension}, size);
}

const CyclicDomain& DomainSpec::as_cyclic() const {
  if (const auto* c = std::get_if<CyclicDomain>(&kind_)) return *c;
  throw DomainError("expected a cyclic domain, got " + describe());
}

const ProductDomain& DomainSpec::as_product() const {
  if (const auto* p = std::get_if<ProductDomain>(&kind_)) return *p;
  throw DomainError("expected a product domain, got " + describe());
}

unsigned DomainSpec::rank() const noexcept {
  return is_cyclic() ? 1u : std::get<ProductDomain>(kind_).dimension;
}

std::uint64_t DomainSpec::modulus(unsigned axis) const {
  if (axis >= rank()) throw DomainError("axis out of range");
  return is_cyclic() ? std::get<CyclicDomain>(kind_).modulus : std::get<ProductDomain>(kind_).prime;
}

bool DomainSpec::has_grid() const noexcept {
  const auto* c = std::get_if<CyclicDomain>(&kind_);
  return c != nullptr && c->grid.has_value();
}

std::string DomainSpec::describe() const {
  std::ostringstream out;
  if (const auto* c = std::get_if<CyclicDomain>(&kind_)) {
    out << "Z_" << c->modulus;
    if (c->grid) out << " (grid R=" << c->grid->samples_per_unit << ")";
  } else {
    const auto& p = std::get<ProductDomain>(kind_);
    out << "Z_" << p.prime << "^" << p.dimension;
  }
  return out.str();
}

bool belongs_to(const GroupElement& x, const DomainSpec& d) noexcept {
  if (x.coords.size() != d.rank()) return false;
  for (unsigned i = 0; i < d.rank(); ++i) {
    if (x.coords[i] >= d.modulus(i)) return false;
  }
  return true;
}

GroupElement add(const GroupElement& x, const GroupElement& y, const DomainSpec& d) {
  if (!belongs_to(x, d) || !belongs_to(y, d)) {
    throw DomainError("group element does not belong to " + d.describe());
  }
  GroupElement sum;
  sum.coords.resize(d.rank());
  for (unsigned i = 0; i < d.rank(); ++i) {
    const std::uint64_t m = d.modulus(i);
    // x, y < m, so x + y - m cannot wrap when x >= m - y.
    sum.coords[i] = x.coords[i] >= m - y.coords[i] ? x.coords[i] - (m - y.coords[i]) : x.coords[i] + y.coords[i];
  }
  return sum;
}

GroupElement zero_element(const DomainSpec& d) { return GroupElement{std::vector<std::uint64_t>(d.rank(), 0)}; }

std::uint64_t index_of(const GroupElement& x, const DomainSpec& d) {
  if (!belongs_to(x, d)) throw DomainError("group element does not belong to " + d.describe());
  std::uint64_t index = 0;
  for (unsigned i = 0; i < d.rank(); ++i) index = index * d.modulus(i) + x.coords[i];
  return index;
}

GroupElement element_at(std::uint64_t index, const DomainSpec& d) {
  if (index >= d.size()) throw DomainError("index out of range for " + d.describe());
  GroupElement x;
  x.coords.resize(d.rank());
  for (unsigned i = d.rank(); i-- > 0;) {
    x.coords[i] = index % d.modulus(i);
    index /= d.modulus(i);
  }
  return x;
}

Rational grid_frequency(std::uint64_t j, const DomainSpec& d) {
  const auto& c = d.as_cyclic();
  if (!c.grid) throw DomainError("grid frequency requested on a domain without a grid");
  if (j >= c.modulus) throw DomainError("frequency index out of range");
  return normalize(BigInt(j) * c.grid->samples_per_unit, BigInt(c.modulus));
}

}  // namespace qhs
