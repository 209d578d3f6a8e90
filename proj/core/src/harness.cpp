#include "qhs/harness.hpp"

#include "qhs/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace qhs {

namespace {

using json = nlohmann::ordered_json;

// Collects schema violations for one JSON object instead of stopping at the first.
class StrictObject {
 public:
  StrictObject(const json& object, std::string where, std::vector<std::string>& errors)
      : object_(object), where_(std::move(where)), errors_(errors) {}

  void allow_only(std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : object_.items()) {
      if (!allowed.contains(item.key())) errors_.push_back("unknown key '" + item.key() + "' in " + where_);
    }
  }

  std::optional<std::uint64_t> unsigned_field(const char* key, bool required) {
    const json* value = find(key, required);
    if (value == nullptr) return std::nullopt;
    if (!value->is_number_unsigned()) {
      errors_.push_back(std::string("'") + key + "' in " + where_ + " must be a non-negative integer");
      return std::nullopt;
    }
    return value->get<std::uint64_t>();
  }

  std::optional<std::string> string_field(const char* key, bool required) {
    const json* value = find(key, required);
    if (value == nullptr) return std::nullopt;
    if (!value->is_string()) {
      errors_.push_back(std::string("'") + key + "' in " + where_ + " must be a string");
      return std::nullopt;
    }
    return value->get<std::string>();
  }

  std::optional<std::vector<std::uint64_t>> unsigned_list(const char* key, bool required) {
    const json* value = find(key, required);
    if (value == nullptr) return std::nullopt;
    std::vector<std::uint64_t> out;
    if (value->is_array()) {
      for (const auto& item : *value) {
        if (!item.is_number_unsigned()) break;
        out.push_back(item.get<std::uint64_t>());
      }
      if (out.size() == value->size()) return out;
    }
    errors_.push_back(std::string("'") + key + "' in " + where_ + " must be a list of non-negative integers");
    return std::nullopt;
  }

  std::optional<std::vector<ModVector>> vector_list(const char* key, bool required) {
    const json* value = find(key, required);
    if (value == nullptr) return std::nullopt;
    std::vector<ModVector> out;
    bool ok = value->is_array();
    for (std::size_t i = 0; ok && i < value->size(); ++i) {
      const auto& row = (*value)[i];
      ok = row.is_array() && std::all_of(row.begin(), row.end(), [](const json& x) { return x.is_number_unsigned(); });
      if (ok) out.push_back(row.get<ModVector>());
    }
    if (ok) return out;
    errors_.push_back(std::string("'") + key + "' in " + where_ + " must be a list of integer vectors");
    return std::nullopt;
  }

 private:
  const json* find(const char* key, bool required) {
    if (auto it = object_.find(key); it != object_.end()) return &*it;
    if (required) errors_.push_back(std::string("missing '") + key + "' in " + where_);
    return nullptr;
  }

  const json& object_;
  std::string where_;
  std::vector<std::string>& errors_;
};

std::optional<AlgorithmParams> parse_params(const std::string& algorithm, const json& params,
                                            std::vector<std::string>& errors) {
  StrictObject obj(params, "params", errors);
  const std::size_t before = errors.size();
  if (algorithm == "alg-r") {
    obj.allow_only({"P", "R", "T", "Q"});
    AlgRParams p;
    p.P = obj.unsigned_field("P", true).value_or(1);
    p.R = obj.unsigned_field("R", false).value_or(1);
    p.T = obj.unsigned_field("T", true).value_or(1);
    p.Q = obj.unsigned_field("Q", true).value_or(2);
    if (errors.size() == before) return p;
  } else if (algorithm == "alg-circle") {
    obj.allow_only({"Q", "a", "runs"});
    CircleParams p;
    p.Q = obj.unsigned_field("Q", true).value_or(1);
    p.a = obj.unsigned_field("a", true).value_or(1);
    p.runs = obj.unsigned_field("runs", false).value_or(2);
    if (errors.size() == before) return p;
  } else if (algorithm == "alg-subspace") {
    obj.allow_only({"p", "n", "basis", "max_samples", "patience"});
    SubspaceParams p;
    p.p = obj.unsigned_field("p", true).value_or(2);
    p.n = static_cast<unsigned>(obj.unsigned_field("n", true).value_or(1));
    p.basis = obj.vector_list("basis", true).value_or(std::vector<ModVector>{});
    p.max_samples = obj.unsigned_field("max_samples", false).value_or(1000);
    p.patience = obj.unsigned_field("patience", false);
    if (errors.size() == before) return p;
  } else if (algorithm == "dual-shor-sweep") {
    obj.allow_only({"Q", "divisors", "runs"});
    SweepParams p;
    p.Q = obj.unsigned_field("Q", true).value_or(1);
    p.divisors = obj.unsigned_list("divisors", true).value_or(std::vector<std::uint64_t>{});
    p.runs = obj.unsigned_field("runs", false).value_or(2);
    if (errors.size() == before) return p;
  }
  return std::nullopt;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) throw RuntimeError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::uint64_t ExperimentConfig::total_records() const {
  if (const auto* sweep = std::get_if<SweepParams>(&params)) return sweep->divisors.size() * trials;
  return trials;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }
  if (!root.is_object()) throw ConfigError({"config must be a JSON object"});

  std::vector<std::string> errors;
  StrictObject top(root, "config", errors);
  top.allow_only({"algorithm", "params", "trials", "master_seed", "output_dir", "format", "workers"});

  ExperimentConfig cfg;
  const auto algorithm = top.string_field("algorithm", true);
  cfg.trials = top.unsigned_field("trials", true).value_or(0);
  cfg.master_seed = top.unsigned_field("master_seed", true).value_or(0);
  if (auto dir = top.string_field("output_dir", false)) cfg.output_dir = *dir;
  if (auto format = top.string_field("format", false)) {
    if (*format == "csv") {
      cfg.format = ReportFormat::csv;
    } else if (*format != "json") {
      errors.push_back("'format' must be \"json\" or \"csv\"");
    }
  }
  if (auto workers = top.unsigned_field("workers", false)) {
    if (*workers < 1) errors.push_back("workers >= 1 violated");
    cfg.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, *workers));
  }

  static const std::set<std::string> known = {"alg-r", "alg-circle", "alg-subspace", "dual-shor-sweep"};
  if (algorithm && !known.contains(*algorithm)) errors.push_back("unknown algorithm '" + *algorithm + "'");
  const auto params_it = root.find("params");
  if (params_it == root.end()) {
    errors.push_back("missing 'params' in config");
  } else if (!params_it->is_object()) {
    errors.push_back("'params' must be an object");
  } else if (algorithm && known.contains(*algorithm)) {
    if (auto params = parse_params(*algorithm, *params_it, errors)) {
      cfg.params = std::move(*params);
      for (auto& v : violations(cfg.params)) errors.push_back(std::move(v));
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config '" + path.string() + "'"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

ExperimentConfig parse_config(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_config_text(source);
  return parse_config_file(source);
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["algorithm"] = cfg.algorithm();
  j["params"] = params_to_json(cfg.params);
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["output_dir"] = cfg.output_dir.generic_string();
  j["format"] = cfg.format == ReportFormat::json ? "json" : "csv";
  j["workers"] = cfg.workers;
  return j;
}

void validate(const ExperimentConfig& cfg) {
  auto errors = violations(cfg.params);
  if (cfg.workers < 1) errors.emplace_back("workers >= 1 violated");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

SummaryStats summarize(std::span<const TrialRecord> records) {
  SummaryStats s;
  if (!records.empty()) s.algorithm = records.front().algorithm;
  s.trials = records.size();

  std::uint64_t stabilization_sum = 0, consumed_sum = 0, subspace_trials = 0;
  std::uint64_t coprime = 0, circle_trials = 0;
  for (const TrialRecord& r : records) {
    if (r.success) ++s.successes;
    if (r.retry) ++s.retries;
    s.histogram[r.outcomes.empty() ? std::string("none") : r.outcomes.front().dump()] += 1;

    if (r.algorithm == "alg-subspace") {
      ++subspace_trials;
      stabilization_sum += r.details.at("samples_to_stabilization").get<std::uint64_t>();
      consumed_sum += r.details.at("samples_consumed").get<std::uint64_t>();
    } else if (r.algorithm == "alg-circle" || r.algorithm == "dual-shor-sweep") {
      ++circle_trials;
      const auto a = r.config.at("a").get<std::uint64_t>();
      std::uint64_t g = 0;
      for (const auto& j : r.outcomes) g = gcd(g, j.get<std::uint64_t>() / a);
      if (g == 1) ++coprime;
    }
  }

  if (s.trials > 0) {
    const double n = static_cast<double>(s.trials);
    const double phat = static_cast<double>(s.successes) / n;
    constexpr double z = 1.959963984540054;
    const double denom = 1.0 + z * z / n;
    const double center = (phat + z * z / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
    s.success_rate = phat;
    s.ci_low = std::max(0.0, center - half);
    s.ci_high = std::min(1.0, center + half);
  }
  if (subspace_trials > 0) {
    s.mean_samples_to_stabilization = static_cast<double>(stabilization_sum) / static_cast<double>(subspace_trials);
    s.mean_samples_consumed = static_cast<double>(consumed_sum) / static_cast<double>(subspace_trials);
  }
  if (circle_trials > 0) s.coprimality_rate = static_cast<double>(coprime) / static_cast<double>(circle_trials);
  return s;
}

json summary_to_json(const SummaryStats& s) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["algorithm"] = s.algorithm;
  j["trials"] = s.trials;
  j["successes"] = s.successes;
  j["retries"] = s.retries;
  j["success_rate"] = opt(s.success_rate);
  j["ci95"] = s.ci_low ? json::array({*s.ci_low, *s.ci_high}) : json(nullptr);
  j["histogram"] = json::object();
  for (const auto& [key, count] : s.histogram) j["histogram"][key] = count;
  j["mean_samples_to_stabilization"] = opt(s.mean_samples_to_stabilization);
  j["mean_samples_consumed"] = opt(s.mean_samples_consumed);
  j["coprimality_rate"] = opt(s.coprimality_rate);
  return j;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t index) {
  const std::uint64_t seed = derive_seed(cfg.master_seed, index);
  TrialRecord r = std::visit(
      [&](const auto& p) -> TrialRecord {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AlgRParams>) {
          return run_alg_r(p, seed);
        } else if constexpr (std::is_same_v<T, CircleParams>) {
          return run_alg_circle(p, seed);
        } else if constexpr (std::is_same_v<T, SubspaceParams>) {
          return run_alg_subspace(p, seed);
        } else {
          const std::uint64_t a = p.divisors.at(index / cfg.trials);
          TrialRecord circle = run_alg_circle(CircleParams{p.Q, a, p.runs}, seed);
          circle.algorithm = "dual-shor-sweep";
          return circle;
        }
      },
      cfg.params);
  r.trial = index;
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw RuntimeError("cannot create output directory '" + cfg.output_dir.string() + "': " + ec.message());

  ExperimentResult result;
  result.run_log = cfg.output_dir / "run.jsonl";
  result.report = cfg.output_dir / (cfg.format == ReportFormat::json ? "summary.json" : "summary.csv");
  std::ofstream log = open_for_write(result.run_log);

  const std::uint64_t total = cfg.total_records();
  result.records.reserve(total);
  auto append = [&](TrialRecord r) {
    log << record_to_json(r).dump() << '\n';
    log.flush();
    if (!log) throw RuntimeError("write failed on '" + result.run_log.string() + "'");
    result.records.push_back(std::move(r));
  };
  auto trial_failure = [](std::uint64_t index, const std::string& what) {
    return RuntimeError("trial " + std::to_string(index) + " failed: " + what);
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, std::max<std::uint64_t>(total, 1)));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < total; ++i) {
      try {
        append(run_trial(cfg, i));
      } catch (const RuntimeError&) {
        throw;
      } catch (const std::exception& e) {
        throw trial_failure(i, e.what());
      }
    }
  } else {
    // Workers fill slots by index; this thread writes them out in order.
    std::vector<std::optional<TrialRecord>> slots(total);
    std::vector<std::string> failures(total);
    std::vector<char> done(total, 0);
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> abort{false};

    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t i = next++; i < total && !abort; i = next++) {
          std::optional<TrialRecord> record;
          std::string failure;
          try {
            record = run_trial(cfg, i);
          } catch (const std::exception& e) {
            failure = e.what();
          }
          std::lock_guard lock(mutex);
          slots[i] = std::move(record);
          failures[i] = std::move(failure);
          done[i] = 1;
          ready.notify_all();
        }
      });
    }
    for (std::uint64_t i = 0; i < total; ++i) {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return done[i] != 0; });
      if (!slots[i]) {
        abort = true;
        throw trial_failure(i, failures[i]);
      }
      TrialRecord r = std::move(*slots[i]);
      slots[i].reset();
      lock.unlock();
      append(std::move(r));
    }
  }

  result.summary = summarize(result.records);
  emit_report(result.records, cfg.format, result.report);
  return result;
}

void emit_report(std::span<const TrialRecord> records, ReportFormat format, const std::filesystem::path& destination) {
  std::ofstream out = open_for_write(destination);
  if (format == ReportFormat::json) {
    out << "{\"summary\":" << summary_to_json(summarize(records)).dump() << ",\n\"records\":[";
    for (std::size_t i = 0; i < records.size(); ++i) {
      out << (i ? ",\n" : "\n") << record_without_timing(records[i]).dump();
    }
    out << "\n]}\n";
  } else {
    out << "trial,algorithm,seed,success,retry,result,outcomes\n";
    for (const TrialRecord& r : records) {
      out << r.trial << ',' << r.algorithm << ',' << r.seed << ',' << (r.success ? "true" : "false") << ','
          << (r.retry ? "true" : "false") << ',' << csv_quote(r.result.is_null() ? "" : r.result.is_string() ? r.result.get<std::string>() : r.result.dump()) << ','
          << csv_quote(r.outcomes.dump()) << '\n';
    }
  }
  if (!out) throw RuntimeError("write failed on '" + destination.string() + "'");
}

std::vector<TrialRecord> read_run_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot read run log '" + path.string() + "'");
  std::vector<TrialRecord> records;
  std::string line;
  for (std::uint64_t number = 1; std::getline(in, line); ++number) {
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw RuntimeError(path.string() + ":" + std::to_string(number) + ": bad record: " + e.what());
    }
  }
  return records;
}

RunLogStatus check_run_log(const std::filesystem::path& path, std::uint64_t expected) {
  return RunLogStatus{read_run_log(path).size(), expected};
}

std::vector<std::string> run_log_without_timing(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  for (const TrialRecord& r : read_run_log(path)) lines.push_back(record_without_timing(r).dump());
  return lines;
}

ReplayReport replay_run_log(const std::filesystem::path& path) {
  ReplayReport report;
  for (const TrialRecord& original : read_run_log(path)) {
    ++report.replayed;
    if (record_without_timing(replay(original)) != record_without_timing(original)) {
      report.mismatched_trials.push_back(original.trial);
    }
  }
  return report;
}

}  // namespace qhs

namespace qhs {

SpectralDistribution experiment_spectrum(const ExperimentConfig& cfg) {
  Rng rng(derive_seed(cfg.master_seed, 0));
  const OracleInstance oracle = std::visit(
      [&](const auto& p) -> OracleInstance {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AlgRParams>) {
          return make_periodic_oracle(DomainSpec::cyclic(p.T * p.R, Grid{p.R}), p.P * p.R, true, rng);
        } else if constexpr (std::is_same_v<T, CircleParams>) {
          return make_periodic_oracle(p.Q, p.Q / p.a, true, rng);
        } else if constexpr (std::is_same_v<T, SubspaceParams>) {
          return make_subspace_oracle(p.p, p.n, p.basis, rng);
        } else {
          if (p.divisors.empty()) throw ConfigError({"dual-shor-sweep has no divisors to show"});
          return make_periodic_oracle(p.Q, p.Q / p.divisors.front(), true, rng);
        }
      },
      cfg.params);
  return marginal_probabilities(oracle);
}

}  // namespace qhs
