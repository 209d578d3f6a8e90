#pragma once

#include "qhs/algorithms.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhs {

enum class ReportFormat { json, csv };

struct ExperimentConfig {
  AlgorithmParams params;
  std::uint64_t trials = 1;  // per divisor for dual-shor-sweep
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "qhs-out";
  ReportFormat format = ReportFormat::json;
  unsigned workers = 1;

  std::string algorithm() const { return algorithm_name(params); }
  /// Number of trial records the experiment produces.
  std::uint64_t total_records() const;
};

/// I/O and trial failures, with the offending path or trial index in the message.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict parse: unknown keys, wrong types, missing fields and violated
/// algorithm preconditions are all collected into one ConfigError.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);
/// Inline JSON when `source` starts with '{', a file path otherwise.
ExperimentConfig parse_config(const std::string& source);

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);
/// Throws ConfigError if cfg (e.g. after CLI overrides) is no longer valid.
void validate(const ExperimentConfig& cfg);

struct SummaryStats {
  std::string algorithm;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t retries = 0;
  std::optional<double> success_rate;  // empty when trials == 0
  std::optional<double> ci_low;        // Wilson 95% interval
  std::optional<double> ci_high;
  std::map<std::string, std::uint64_t> histogram;  // first raw outcome per trial
  std::optional<double> mean_samples_to_stabilization;  // alg-subspace
  std::optional<double> mean_samples_consumed;          // alg-subspace
  std::optional<double> coprimality_rate;               // alg-circle, dual-shor-sweep

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// Order-independent aggregation.
SummaryStats summarize(std::span<const TrialRecord> records);
nlohmann::ordered_json summary_to_json(const SummaryStats& s);

/// Runs the trial for record index `index` with seed derive_seed(master_seed, index).
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t index);

struct ExperimentResult {
  SummaryStats summary;
  std::vector<TrialRecord> records;
  std::filesystem::path run_log;
  std::filesystem::path report;
};

/// Executes every trial (fanned out over cfg.workers), appends one JSON line
/// per record to <output_dir>/run.jsonl in trial order, then writes
/// <output_dir>/summary.{json,csv}.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// json: {"summary": {...}, "records": [...]} with one record per line.
/// csv: header "trial,algorithm,seed,success,retry,result,outcomes" plus one row per record.
/// Timing fields are left out of both.
void emit_report(std::span<const TrialRecord> records, ReportFormat format, const std::filesystem::path& destination);

std::vector<TrialRecord> read_run_log(const std::filesystem::path& path);

struct RunLogStatus {
  std::uint64_t records = 0;
  std::uint64_t expected = 0;
  bool complete() const noexcept { return records == expected; }
};
RunLogStatus check_run_log(const std::filesystem::path& path, std::uint64_t expected);

/// Run log lines with the timing fields removed, for byte comparison.
std::vector<std::string> run_log_without_timing(const std::filesystem::path& path);

struct ReplayReport {
  std::uint64_t replayed = 0;
  std::vector<std::uint64_t> mismatched_trials;
};
ReplayReport replay_run_log(const std::filesystem::path& path);

}  // namespace qhs

namespace qhs {

/// Left-register distribution of the oracle that trial 0 of `cfg` builds
/// (for dual-shor-sweep, the first divisor). Written by `qhs --spectrum`.
SpectralDistribution experiment_spectrum(const ExperimentConfig& cfg);

}  // namespace qhs
