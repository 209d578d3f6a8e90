#pragma once

#include "qhs/groups.hpp"

#include <complex>
#include <set>
#include <span>
#include <vector>

namespace qhs {

using Complex = std::complex<double>;

/// One complex amplitude per domain element, in index_of order.
struct AmplitudeVector {
  DomainSpec domain;
  std::vector<Complex> entries;

  AmplitudeVector(DomainSpec d, std::vector<Complex> values);
  /// All-zero vector on `d`.
  explicit AmplitudeVector(DomainSpec d);

  double squared_norm() const noexcept;
};

enum class Direction { forward, inverse };

// Unitary transforms. Forward uses exp(-2*pi*i*x*y/M), inverse exp(+2*pi*i*x*y/M),
// both scaled by 1/sqrt(M).

/// Cyclic DFT via FFTW. Throws DomainError on a product domain.
AmplitudeVector dft(const AmplitudeVector& v, Direction direction);
/// Cyclic DFT by direct O(M^2) summation.
AmplitudeVector dft_direct(const AmplitudeVector& v, Direction direction);

/// DFT on Z_p^n with characters exp(-2*pi*i*(x.y mod p)/p). Throws on a cyclic domain.
AmplitudeVector dft_product(const AmplitudeVector& v, Direction direction = Direction::forward);
/// Same transform by direct O(p^(2n)) summation.
AmplitudeVector dft_product_direct(const AmplitudeVector& v, Direction direction = Direction::forward);

/// Transform in place along every axis of the domain (dispatches on domain kind).
void transform_in_place(std::span<Complex> values, const DomainSpec& domain, Direction direction);

/// Frequency indices whose probability exceeds tol.
std::set<std::uint64_t> spectrum_support(std::span<const double> prob, double tol);

double squared_norm(std::span<const Complex> values) noexcept;

}  // namespace qhs
