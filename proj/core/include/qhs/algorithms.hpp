#pragma once

#include "qhs/oracle.hpp"
#include "qhs/postprocess.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qhs {

/// Invalid experiment or pipeline configuration. Carries every violation
/// found, not just the first.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Period finding on a grid over [0, T) with R samples per unit.
struct AlgRParams {
  std::uint64_t P = 1;
  std::uint64_t R = 1;
  std::uint64_t T = 1;
  std::uint64_t Q = 2;
};

/// Period 1/a on the circle, realized on Z_Q.
struct CircleParams {
  std::uint64_t Q = 1;
  std::uint64_t a = 1;
  std::uint64_t runs = 2;
};

struct SubspaceParams {
  std::uint64_t p = 2;
  unsigned n = 1;
  std::vector<ModVector> basis;
  std::uint64_t max_samples = 1000;
  /// Rank-free samples needed before W counts as stable; empty means default_patience(p, n).
  std::optional<std::uint64_t> patience;
};

struct SweepParams {
  std::uint64_t Q = 1;
  std::vector<std::uint64_t> divisors;
  std::uint64_t runs = 2;
};

using AlgorithmParams = std::variant<AlgRParams, CircleParams, SubspaceParams, SweepParams>;

std::string algorithm_name(const AlgorithmParams& params);

std::vector<std::string> violations(const AlgRParams& p);
std::vector<std::string> violations(const CircleParams& p);
std::vector<std::string> violations(const SubspaceParams& p);
std::vector<std::string> violations(const SweepParams& p);
std::vector<std::string> violations(const AlgorithmParams& p);

nlohmann::ordered_json params_to_json(const AlgorithmParams& params);

/// n + ceil(32 / log2 p): a premature stop then has probability below 2^-32.
std::uint64_t default_patience(std::uint64_t p, unsigned n);

/// One end-to-end run. Serialized with a fixed field order; see docs/formats.md.
struct TrialRecord {
  std::uint64_t trial = 0;
  std::string algorithm;
  nlohmann::ordered_json config;  // snapshot sufficient for replay together with seed
  std::uint64_t seed = 0;
  nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
  nlohmann::ordered_json result;  // null when nothing was recovered
  bool success = false;
  bool retry = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::int64_t duration_us = 0;
};

nlohmann::ordered_json record_to_json(const TrialRecord& r);
TrialRecord record_from_json(const nlohmann::ordered_json& j);
/// The record as JSON without its timing fields, for determinism checks.
nlohmann::ordered_json record_without_timing(const TrialRecord& r);

/// Builds an injective oracle of sample-period P*R on Z_{T*R}, measures once,
/// bins by Q and recovers n/P from the continued fraction of m/Q with bound
/// floor(sqrt(Q/2)). Success means the recovered denominator equals P.
TrialRecord run_alg_r(const AlgRParams& params, std::uint64_t seed);

/// Builds an injective oracle of period Q/a on Z_Q, draws `runs` frequencies
/// (each a multiple of a) and takes their gcd. Success means gcd == a; an
/// all-zero draw is a failure flagged for retry.
TrialRecord run_alg_circle(const CircleParams& params, std::uint64_t seed);

/// Samples V^perp from the Z_p^n marginal until the sampled span stabilizes
/// and returns its complement. Success means the result equals V.
TrialRecord run_alg_subspace(const SubspaceParams& params, std::uint64_t seed);

/// run_alg_circle for every divisor, trials_per_divisor times each, with
/// per-record seeds drawn from `seed`'s stream.
std::vector<TrialRecord> run_dual_shor_sweep(const SweepParams& params, std::uint64_t trials_per_divisor,
                                             std::uint64_t seed);

/// Re-executes a record from its config snapshot and seed.
TrialRecord replay(const TrialRecord& record);

}  // namespace qhs
