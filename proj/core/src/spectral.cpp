#include "qhs/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace qhs {

namespace {

// FFTW plans are created under a lock and cached for the process lifetime;
// fftw_execute_dft on an existing plan is thread-safe.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& dims, Direction direction) {
    const Key key{dims, direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in, out, key.second,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::pair<std::vector<int>, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::vector<int> fft_dims(const DomainSpec& domain) {
  std::vector<int> dims(domain.rank());
  for (unsigned i = 0; i < domain.rank(); ++i) {
    const std::uint64_t m = domain.modulus(i);
    if (m > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      throw DomainError("transform size too large: " + domain.describe());
    }
    dims[i] = static_cast<int>(m);
  }
  return dims;
}

// Roots of unity exp(sign*2*pi*i*k/m) for k in [0, m).
std::vector<Complex> roots_of_unity(std::uint64_t m, Direction direction) {
  const double sign = direction == Direction::forward ? -1.0 : 1.0;
  std::vector<Complex> w(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
  }
  return w;
}

void require_cyclic(const AmplitudeVector& v) {
  if (!v.domain.is_cyclic()) throw DomainError("cyclic DFT applied to " + v.domain.describe());
}

void require_product(const AmplitudeVector& v) {
  if (!v.domain.is_product()) throw DomainError("product DFT applied to " + v.domain.describe());
}

}  // namespace

AmplitudeVector::AmplitudeVector(DomainSpec d, std::vector<Complex> values)
    : domain(std::move(d)), entries(std::move(values)) {
  if (entries.size() != domain.size()) {
    throw DomainError("amplitude vector length " + std::to_string(entries.size()) + " does not match " +
                      domain.describe());
  }
}

AmplitudeVector::AmplitudeVector(DomainSpec d) : domain(std::move(d)), entries(domain.size()) {}

double AmplitudeVector::squared_norm() const noexcept { return qhs::squared_norm(entries); }

double squared_norm(std::span<const Complex> values) noexcept {
  double sum = 0.0;
  for (const Complex& z : values) sum += std::norm(z);
  return sum;
}

void transform_in_place(std::span<Complex> values, const DomainSpec& domain, Direction direction) {
  if (values.size() != domain.size()) throw DomainError("transform length does not match " + domain.describe());
  fftw_plan plan = plan_cache().get(fft_dims(domain), direction);
  std::vector<Complex> out(values.size());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(values.data()), reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(domain.size()));
  for (std::size_t i = 0; i < out.size(); ++i) values[i] = out[i] * scale;
}

AmplitudeVector dft(const AmplitudeVector& v, Direction direction) {
  require_cyclic(v);
  AmplitudeVector out = v;
  transform_in_place(out.entries, out.domain, direction);
  return out;
}

AmplitudeVector dft_direct(const AmplitudeVector& v, Direction direction) {
  require_cyclic(v);
  const std::uint64_t m = v.domain.size();
  const auto w = roots_of_unity(m, direction);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  AmplitudeVector out(v.domain);
  for (std::uint64_t j = 0; j < m; ++j) {
    Complex acc{};
    std::uint64_t phase = 0;  // x*j mod m, updated incrementally
    for (std::uint64_t x = 0; x < m; ++x) {
      acc += v.entries[x] * w[phase];
      phase += j;
      if (phase >= m) phase -= m;
    }
    out.entries[j] = acc * scale;
  }
  return out;
}

AmplitudeVector dft_product(const AmplitudeVector& v, Direction direction) {
  require_product(v);
  AmplitudeVector out = v;
  transform_in_place(out.entries, out.domain, direction);
  return out;
}

AmplitudeVector dft_product_direct(const AmplitudeVector& v, Direction direction) {
  require_product(v);
  const auto& prod = v.domain.as_product();
  const std::uint64_t p = prod.prime;
  const std::uint64_t size = v.domain.size();
  const auto w = roots_of_unity(p, direction);

  std::vector<GroupElement> elements;
  elements.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) elements.push_back(element_at(i, v.domain));

  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  AmplitudeVector out(v.domain);
  for (std::uint64_t y = 0; y < size; ++y) {
    Complex acc{};
    for (std::uint64_t x = 0; x < size; ++x) {
      std::uint64_t dot = 0;
      for (unsigned k = 0; k < prod.dimension; ++k) dot = (dot + elements[x].coords[k] * elements[y].coords[k]) % p;
      acc += v.entries[x] * w[dot];
    }
    out.entries[y] = acc * scale;
  }
  return out;
}

std::set<std::uint64_t> spectrum_support(std::span<const double> prob, double tol) {
  std::set<std::uint64_t> support;
  for (std::size_t j = 0; j < prob.size(); ++j) {
    if (prob[j] > tol) support.insert(j);
  }
  return support;
}

}  // namespace qhs
