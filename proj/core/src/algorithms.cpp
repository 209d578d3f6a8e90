#include "qhs/algorithms.hpp"

#include "qhs/simulator.hpp"

#include <chrono>
#include <numeric>

namespace qhs {

namespace {

using json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

class Stopwatch {
 public:
  std::int64_t elapsed_us() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Params>
void require_valid(const Params& p) {
  if (auto v = violations(p); !v.empty()) throw ConfigError(std::move(v));
}

bool fits_product(std::uint64_t a, std::uint64_t b) { return b == 0 || a <= UINT64_MAX / b; }

json circle_snapshot(const CircleParams& p) { return json{{"Q", p.Q}, {"a", p.a}, {"runs", p.runs}}; }

TrialRecord circle_trial(const CircleParams& params, std::uint64_t seed, const char* tag) {
  require_valid(params);
  const Stopwatch clock;
  Rng rng(seed);
  const OracleInstance oracle = make_periodic_oracle(params.Q, params.Q / params.a, true, rng);
  const OutcomeSampler sampler(marginal_probabilities(oracle).prob);

  std::vector<std::uint64_t> outcomes(params.runs);
  for (auto& j : outcomes) j = sampler.draw(rng);
  const std::uint64_t g = gcd_recover(outcomes);

  TrialRecord r;
  r.algorithm = tag;
  r.config = circle_snapshot(params);
  r.seed = seed;
  r.outcomes = outcomes;
  r.retry = g == 0;
  if (g != 0) r.result = g;
  // gcd == a  <=>  the hidden period Q/a equals Q/gcd.
  r.success = g != 0 && params.Q % g == 0 && Verification::period_is(oracle, params.Q / g);
  r.details = json{{"gcd", g}};
  r.duration_us = clock.elapsed_us();
  return r;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument("invalid configuration: " + join(violations)), violations_(std::move(violations)) {}

std::string algorithm_name(const AlgorithmParams& params) {
  static constexpr const char* names[] = {"alg-r", "alg-circle", "alg-subspace", "dual-shor-sweep"};
  return names[params.index()];
}

std::vector<std::string> violations(const AlgRParams& p) {
  std::vector<std::string> v;
  if (p.P < 1) v.emplace_back("P >= 1 violated");
  if (p.R < 1) v.emplace_back("R >= 1 violated");
  if (p.T < 1) v.emplace_back("T >= 1 violated");
  if (!v.empty()) return v;
  if (p.T % p.P != 0) v.emplace_back("P | T violated");
  if (!fits_product(p.T, p.R) || !fits_product(p.P, p.R)) {
    v.emplace_back("T*R fits in 64 bits violated");
  } else if ((p.T * p.R) % (p.P * p.R) != 0) {
    v.emplace_back("P*R | T*R violated");
  }
  if (BigInt(p.Q) < 2 * BigInt(p.P) * p.P) v.emplace_back("Q >= 2*P^2 violated");
  return v;
}

std::vector<std::string> violations(const CircleParams& p) {
  std::vector<std::string> v;
  if (p.Q < 1) v.emplace_back("Q >= 1 violated");
  if (p.a < 1) v.emplace_back("a >= 1 violated");
  if (p.Q >= 1 && p.a >= 1 && p.Q % p.a != 0) v.emplace_back("a | Q violated");
  if (p.runs < 2) v.emplace_back("runs >= 2 violated");
  return v;
}

std::vector<std::string> violations(const SubspaceParams& p) {
  std::vector<std::string> v;
  if (!is_prime(p.p)) v.emplace_back("p prime violated");
  if (p.n < 1) v.emplace_back("n >= 1 violated");
  if (p.max_samples < 1) v.emplace_back("max_samples >= 1 violated");
  if (p.patience && *p.patience < 1) v.emplace_back("patience >= 1 violated");
  if (!v.empty()) return v;
  try {
    const DomainSpec d = DomainSpec::product(p.p, p.n);
    if (d.size() > (1ULL << 20)) v.emplace_back("p^n <= 2^20 violated");
    if (!SubspaceBasis::independent(p.p, p.n, p.basis)) v.emplace_back("basis independent mod p violated");
  } catch (const DomainError& e) {
    v.emplace_back(e.what());
  }
  return v;
}

std::vector<std::string> violations(const SweepParams& p) {
  std::vector<std::string> v;
  if (p.Q < 1) v.emplace_back("Q >= 1 violated");
  for (std::uint64_t a : p.divisors) {
    if (a < 1 || (p.Q >= 1 && p.Q % a != 0)) v.emplace_back("a | Q violated for a=" + std::to_string(a));
  }
  if (p.runs < 2) v.emplace_back("runs >= 2 violated");
  return v;
}

std::vector<std::string> violations(const AlgorithmParams& p) {
  return std::visit([](const auto& params) { return violations(params); }, p);
}

json params_to_json(const AlgorithmParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AlgRParams>) {
          return json{{"P", p.P}, {"R", p.R}, {"T", p.T}, {"Q", p.Q}};
        } else if constexpr (std::is_same_v<T, CircleParams>) {
          return circle_snapshot(p);
        } else if constexpr (std::is_same_v<T, SubspaceParams>) {
          json j{{"p", p.p}, {"n", p.n}, {"basis", p.basis}, {"max_samples", p.max_samples}};
          if (p.patience) j["patience"] = *p.patience;
          return j;
        } else {
          return json{{"Q", p.Q}, {"divisors", p.divisors}, {"runs", p.runs}};
        }
      },
      params);
}

std::uint64_t default_patience(std::uint64_t p, unsigned n) {
  // Smallest t with p^t >= 2^32.
  std::uint64_t t = 0;
  for (long double reach = 1.0L; reach < 4294967296.0L; reach *= static_cast<long double>(p)) ++t;
  return n + t;
}

json record_to_json(const TrialRecord& r) {
  json j;
  j["trial"] = r.trial;
  j["algorithm"] = r.algorithm;
  j["config"] = r.config;
  j["seed"] = r.seed;
  j["outcomes"] = r.outcomes;
  j["result"] = r.result;
  j["success"] = r.success;
  j["retry"] = r.retry;
  j["details"] = r.details;
  j["duration_us"] = r.duration_us;
  return j;
}

TrialRecord record_from_json(const json& j) {
  TrialRecord r;
  r.trial = j.at("trial").get<std::uint64_t>();
  r.algorithm = j.at("algorithm").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.outcomes = j.at("outcomes");
  r.result = j.at("result");
  r.success = j.at("success").get<bool>();
  r.retry = j.at("retry").get<bool>();
  r.details = j.at("details");
  r.duration_us = j.value("duration_us", std::int64_t{0});
  return r;
}

json record_without_timing(const TrialRecord& r) {
  json j = record_to_json(r);
  j.erase("duration_us");
  return j;
}

TrialRecord run_alg_r(const AlgRParams& params, std::uint64_t seed) {
  require_valid(params);
  const Stopwatch clock;
  Rng rng(seed);
  const DomainSpec domain = DomainSpec::cyclic(params.T * params.R, Grid{params.R});
  const OracleInstance oracle = make_periodic_oracle(domain, params.P * params.R, true, rng);
  const SpectralDistribution dist = marginal_probabilities(oracle);

  const std::uint64_t j = measure(dist, rng);
  const BigInt Q = params.Q;
  const BinnedOutcome binned = bin_frequency(j, domain, Q);
  const BigInt bound = boost::multiprecision::sqrt(BigInt(Q / 2));
  const std::optional<Rational> recovered = recover_rational(binned, bound);

  const Rational y = grid_frequency(j, domain);
  const Rational peak = y - Rational(y.num() / y.den());  // frac(y); y >= 0

  TrialRecord r;
  r.algorithm = "alg-r";
  r.config = params_to_json(params);
  r.seed = seed;
  r.outcomes = json::array({j});
  r.retry = !recovered.has_value();
  r.details = json{{"binned", binned.m.str() + "/" + binned.Q.str()}, {"frequency", y.to_string()}};
  if (recovered) {
    r.result = recovered->to_string();
    // The sample-period of the oracle is den * R exactly when den == P.
    r.success = Verification::period_is(oracle, static_cast<std::uint64_t>(recovered->den()) * params.R);
    r.details["denominator"] = recovered->den().str();
  }
  r.details["peak_recovered"] = recovered.has_value() && *recovered == peak;
  r.duration_us = clock.elapsed_us();
  return r;
}

TrialRecord run_alg_circle(const CircleParams& params, std::uint64_t seed) {
  return circle_trial(params, seed, "alg-circle");
}

TrialRecord run_alg_subspace(const SubspaceParams& params, std::uint64_t seed) {
  require_valid(params);
  const Stopwatch clock;
  Rng rng(seed);
  const OracleInstance oracle = make_subspace_oracle(params.p, params.n, params.basis, rng);
  const DomainSpec& domain = oracle.domain();
  const OutcomeSampler sampler(marginal_probabilities(oracle).prob);

  const std::uint64_t patience = params.patience.value_or(default_patience(params.p, params.n));
  const SubspaceRecovery recovery = recover_subspace(
      params.p, params.n, [&] { return element_at(sampler.draw(rng), domain).coords; }, params.max_samples,
      patience);

  TrialRecord r;
  r.algorithm = "alg-subspace";
  r.config = params_to_json(params);
  r.seed = seed;
  r.outcomes = recovery.samples;
  r.retry = !recovery.hidden.has_value();
  if (recovery.hidden) {
    r.result = recovery.hidden->rows();
    r.success = Verification::subspace_is(oracle, *recovery.hidden);
  }
  r.details = json{{"samples_consumed", recovery.samples.size()},
                   {"samples_to_stabilization", recovery.samples_to_stabilization},
                   {"patience", patience}};
  if (recovery.sampled_span) r.details["sampled_span_dimension"] = recovery.sampled_span->dimension();
  r.duration_us = clock.elapsed_us();
  return r;
}

std::vector<TrialRecord> run_dual_shor_sweep(const SweepParams& params, std::uint64_t trials_per_divisor,
                                             std::uint64_t seed) {
  require_valid(params);
  Rng rng(seed);
  std::vector<TrialRecord> records;
  records.reserve(params.divisors.size() * trials_per_divisor);
  for (std::uint64_t a : params.divisors) {
    for (std::uint64_t t = 0; t < trials_per_divisor; ++t) {
      TrialRecord r = circle_trial(CircleParams{params.Q, a, params.runs}, rng.next(), "dual-shor-sweep");
      r.trial = records.size();
      records.push_back(std::move(r));
    }
  }
  return records;
}

TrialRecord replay(const TrialRecord& record) {
  const json& c = record.config;
  TrialRecord r;
  if (record.algorithm == "alg-r") {
    r = run_alg_r(AlgRParams{c.at("P").get<std::uint64_t>(), c.at("R").get<std::uint64_t>(),
                             c.at("T").get<std::uint64_t>(), c.at("Q").get<std::uint64_t>()},
                  record.seed);
  } else if (record.algorithm == "alg-circle" || record.algorithm == "dual-shor-sweep") {
    r = circle_trial(CircleParams{c.at("Q").get<std::uint64_t>(), c.at("a").get<std::uint64_t>(),
                                  c.at("runs").get<std::uint64_t>()},
                     record.seed, record.algorithm == "alg-circle" ? "alg-circle" : "dual-shor-sweep");
  } else if (record.algorithm == "alg-subspace") {
    SubspaceParams p{c.at("p").get<std::uint64_t>(), c.at("n").get<unsigned>(),
                     c.at("basis").get<std::vector<ModVector>>(), c.at("max_samples").get<std::uint64_t>(), {}};
    if (c.contains("patience")) p.patience = c.at("patience").get<std::uint64_t>();
    r = run_alg_subspace(p, record.seed);
  } else {
    throw ConfigError({"unknown algorithm '" + record.algorithm + "' in record"});
  }
  r.trial = record.trial;
  return r;
}

}  // namespace qhs
