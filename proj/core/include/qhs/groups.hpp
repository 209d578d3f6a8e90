#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qhs {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when an argument does not belong to (or describe) a valid domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidRational : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Euclid. gcd(0, x) = x, gcd(0, 0) = 0.
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
BigInt gcd(BigInt a, BigInt b);

bool is_prime(std::uint64_t n) noexcept;

/// Fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  explicit Rational(BigInt integer) : num_(std::move(integer)), den_(1) {}

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  /// "num/den" (always with the slash, even for integers).
  std::string to_string() const;
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational abs() const;

 private:
  friend Rational normalize(BigInt num, BigInt den);
  Rational(BigInt num, BigInt den, int) : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_;
  BigInt den_;
};

/// Moves the sign to the numerator and divides out the common factor.
/// Throws InvalidRational when den == 0.
Rational normalize(BigInt num, BigInt den);

/// Real-line sampling attached to a cyclic domain: index k is the point k/R.
struct Grid {
  std::uint64_t samples_per_unit = 1;
  friend bool operator==(const Grid&, const Grid&) = default;
};

struct CyclicDomain {
  std::uint64_t modulus = 1;
  std::optional<Grid> grid;
  friend bool operator==(const CyclicDomain&, const CyclicDomain&) = default;
};

struct ProductDomain {
  std::uint64_t prime = 2;
  unsigned dimension = 1;
  friend bool operator==(const ProductDomain&, const ProductDomain&) = default;
};

/// Z_M (optionally a grid over a window of the real line) or Z_p^n.
class DomainSpec {
 public:
  static DomainSpec cyclic(std::uint64_t modulus, std::optional<Grid> grid = std::nullopt);
  static DomainSpec product(std::uint64_t prime, unsigned dimension);

  bool is_cyclic() const noexcept { return std::holds_alternative<CyclicDomain>(kind_); }
  bool is_product() const noexcept { return std::holds_alternative<ProductDomain>(kind_); }
  const CyclicDomain& as_cyclic() const;
  const ProductDomain& as_product() const;

  /// Number of group elements.
  std::uint64_t size() const noexcept { return size_; }
  /// Number of coordinates of a group element.
  unsigned rank() const noexcept;
  std::uint64_t modulus(unsigned axis) const;
  bool has_grid() const noexcept;

  std::string describe() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  explicit DomainSpec(std::variant<CyclicDomain, ProductDomain> kind, std::uint64_t size)
      : kind_(std::move(kind)), size_(size) {}

  std::variant<CyclicDomain, ProductDomain> kind_;
  std::uint64_t size_;
};

struct GroupElement {
  std::vector<std::uint64_t> coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

bool belongs_to(const GroupElement& x, const DomainSpec& d) noexcept;
GroupElement add(const GroupElement& x, const GroupElement& y, const DomainSpec& d);
GroupElement zero_element(const DomainSpec& d);

// Linear indexing of domain elements. Product coordinates are big-endian:
// the first coordinate is the most significant digit in base p.
std::uint64_t index_of(const GroupElement& x, const DomainSpec& d);
GroupElement element_at(std::uint64_t index, const DomainSpec& d);

/// Real frequency j*R/M of cyclic frequency index j, kept exact.
Rational grid_frequency(std::uint64_t j, const DomainSpec& d);

}  // namespace qhs
