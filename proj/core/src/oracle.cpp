#include "qhs/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace qhs {

namespace {

constexpr std::uint64_t kMaxTableSize = 1ULL << 28;

void check_table_size(const DomainSpec& d) {
  if (d.size() > kMaxTableSize) throw DomainError("domain too large for a lookup-table oracle: " + d.describe());
}

}  // namespace

OracleInstance::OracleInstance(DomainSpec domain, std::vector<Label> table, Label label_count, HiddenStructure truth,
                               bool injective)
    : domain_(std::move(domain)),
      table_(std::move(table)),
      label_count_(label_count),
      truth_(std::move(truth)),
      injective_(injective) {
  if (table_.size() != domain_.size()) {
    throw DomainError("oracle table has " + std::to_string(table_.size()) + " entries but " + domain_.describe() +
                      " has " + std::to_string(domain_.size()));
  }
  if (label_count_ < 1) throw DomainError("oracle needs at least one label");
  for (Label s : table_) {
    if (s >= label_count_) throw DomainError("oracle label " + std::to_string(s) + " exceeds label_count");
  }
  const bool period_truth = std::holds_alternative<HiddenPeriod>(truth_);
  if (period_truth != domain_.is_cyclic()) {
    throw DomainError("ground truth kind does not match " + domain_.describe());
  }
}

bool Verification::period_is(const OracleInstance& o, std::uint64_t period) {
  const auto* truth = std::get_if<HiddenPeriod>(&o.truth_);
  return truth != nullptr && truth->period == period;
}

bool Verification::subspace_is(const OracleInstance& o, const SubspaceBasis& candidate) {
  const auto* truth = std::get_if<HiddenSubspace>(&o.truth_);
  if (truth == nullptr) return false;
  const auto& prod = o.domain_.as_product();
  return SubspaceBasis::span_of(prod.prime, prod.dimension, truth->basis) == candidate;
}

std::uint64_t minimal_period(std::span<const Label> table) {
  const std::uint64_t m = table.size();
  for (std::uint64_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool periodic = true;
    for (std::uint64_t k = d; k < m && periodic; ++k) periodic = table[k] == table[k - d];
    if (periodic) return d;
  }
  return m;
}

std::uint64_t minimal_period(const OracleInstance& o) {
  if (!o.domain().is_cyclic()) throw DomainError("minimal_period needs a cyclic domain");
  return minimal_period(o.table());
}

OracleInstance make_periodic_oracle(const DomainSpec& domain, std::uint64_t d, bool injective, Rng& rng) {
  const std::uint64_t m = domain.as_cyclic().modulus;
  if (d == 0 || m % d != 0) {
    throw DomainError("period must divide domain size (d=" + std::to_string(d) + ", M=" + std::to_string(m) + ")");
  }
  check_table_size(domain);

  std::vector<Label> pattern(d);
  Label label_count = 1;
  if (injective) {
    std::iota(pattern.begin(), pattern.end(), Label{0});
    rng.shuffle(std::span<Label>(pattern));
    label_count = static_cast<Label>(d);
  } else if (d > 1) {
    // Fewer labels than period positions, redrawn until the pattern's own
    // minimal period is exactly d.
    label_count = static_cast<Label>(std::max<std::uint64_t>(2, d / 2));
    do {
      for (auto& s : pattern) s = static_cast<Label>(rng.below(label_count));
    } while (minimal_period(pattern) != d);
  }

  std::vector<Label> table(m);
  for (std::uint64_t k = 0; k < m; ++k) table[k] = pattern[k % d];
  return OracleInstance(domain, std::move(table), label_count, HiddenPeriod{d}, injective);
}

OracleInstance make_periodic_oracle(std::uint64_t M, std::uint64_t d, bool injective, Rng& rng) {
  return make_periodic_oracle(DomainSpec::cyclic(M), d, injective, rng);
}

OracleInstance make_subspace_oracle(std::uint64_t p, unsigned n, std::span<const ModVector> basis, Rng& rng) {
  const DomainSpec domain = DomainSpec::product(p, n);
  check_table_size(domain);
  const SubspaceBasis v = SubspaceBasis::span_of(p, n, basis);
  if (v.dimension() != basis.size()) throw DomainError("subspace basis is linearly dependent");

  // Number cosets by first appearance of their canonical representative.
  std::unordered_map<std::uint64_t, Label> coset_of_rep;
  std::vector<Label> coset(domain.size());
  for (std::uint64_t x = 0; x < domain.size(); ++x) {
    const std::uint64_t rep = index_of(GroupElement{v.reduce(element_at(x, domain).coords)}, domain);
    auto [it, inserted] = coset_of_rep.try_emplace(rep, static_cast<Label>(coset_of_rep.size()));
    coset[x] = it->second;
  }

  std::vector<Label> relabel(coset_of_rep.size());
  std::iota(relabel.begin(), relabel.end(), Label{0});
  rng.shuffle(std::span<Label>(relabel));
  for (auto& s : coset) s = relabel[s];

  return OracleInstance(domain, std::move(coset), static_cast<Label>(relabel.size()),
                        HiddenSubspace{{basis.begin(), basis.end()}}, true);
}

bool verify_hidden_structure(const OracleInstance& o) {
  const auto& truth = Verification::ground_truth(o);
  const auto table = o.table();

  if (const auto* period = std::get_if<HiddenPeriod>(&truth)) {
    const std::uint64_t m = o.domain().size();
    const std::uint64_t d = period->period;
    if (d == 0 || m % d != 0 || minimal_period(table) != d) return false;
    if (o.injective()) {
      std::vector<Label> first(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(d));
      std::sort(first.begin(), first.end());
      if (std::adjacent_find(first.begin(), first.end()) != first.end()) return false;
    }
    return true;
  }

  const auto& sub = std::get<HiddenSubspace>(truth);
  const auto& prod = o.domain().as_product();
  std::optional<SubspaceBasis> v;
  try {
    if (!SubspaceBasis::independent(prod.prime, prod.dimension, sub.basis)) return false;
    v = SubspaceBasis::span_of(prod.prime, prod.dimension, sub.basis);
  } catch (const DomainError&) {
    return false;
  }

  std::unordered_map<std::uint64_t, Label> label_of_rep;
  std::unordered_map<Label, std::uint64_t> rep_of_label;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    const std::uint64_t rep = index_of(GroupElement{v->reduce(element_at(x, o.domain()).coords)}, o.domain());
    const auto [it, fresh] = label_of_rep.try_emplace(rep, table[x]);
    if (it->second != table[x]) return false;  // not constant on a coset
    if (o.injective()) {
      const auto [jt, fresh_label] = rep_of_label.try_emplace(table[x], rep);
      if (jt->second != rep) return false;  // two cosets share a label
    }
  }
  return true;
}

BipartiteState::BipartiteState(DomainSpec d, Label labels)
    : domain(std::move(d)), label_count(labels), amplitudes(domain.size() * labels) {}

BipartiteState::BipartiteState(DomainSpec d, Label labels, std::vector<Complex> values)
    : domain(std::move(d)), label_count(labels), amplitudes(std::move(values)) {
  if (amplitudes.size() != domain.size() * label_count) throw DomainError("bipartite state has the wrong length");
}

BipartiteState apply_oracle_unitary(const BipartiteState& state, const OracleInstance& o) {
  if (!(state.domain == o.domain()) || state.label_count != o.label_count()) {
    throw DomainError("register size mismatch: state is " + state.domain.describe() + " x Z_" +
                      std::to_string(state.label_count) + ", oracle is " + o.domain().describe() + " x Z_" +
                      std::to_string(o.label_count()));
  }
  const Label labels = state.label_count;
  BipartiteState out(state.domain, labels);
  const auto table = o.table();
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    for (Label s = 0; s < labels; ++s) {
      const Label target = static_cast<Label>((std::uint64_t{s} + table[x]) % labels);
      out.at(x, target) = state.at(x, s);
    }
  }
  return out;
}

nlohmann::ordered_json domain_to_json(const DomainSpec& d) {
  nlohmann::ordered_json j;
  if (d.is_cyclic()) {
    const auto& c = d.as_cyclic();
    j["kind"] = "cyclic";
    j["M"] = c.modulus;
    if (c.grid) j["grid"] = {{"R", c.grid->samples_per_unit}};
  } else {
    const auto& p = d.as_product();
    j["kind"] = "product";
    j["p"] = p.prime;
    j["n"] = p.dimension;
  }
  return j;
}

DomainSpec domain_from_json(const nlohmann::ordered_json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "cyclic") {
    std::optional<Grid> grid;
    if (j.contains("grid")) grid = Grid{j.at("grid").at("R").get<std::uint64_t>()};
    return DomainSpec::cyclic(j.at("M").get<std::uint64_t>(), grid);
  }
  if (kind == "product") return DomainSpec::product(j.at("p").get<std::uint64_t>(), j.at("n").get<unsigned>());
  throw DomainError("unknown domain kind '" + kind + "'");
}

nlohmann::ordered_json oracle_to_json(const OracleInstance& o) {
  nlohmann::ordered_json j;
  j["domain"] = domain_to_json(o.domain());
  j["table"] = std::vector<Label>(o.table().begin(), o.table().end());
  j["label_count"] = o.label_count();
  j["injective"] = o.injective();
  const auto& truth = Verification::ground_truth(o);
  if (const auto* period = std::get_if<HiddenPeriod>(&truth)) {
    j["ground_truth"] = {{"kind", "period"}, {"d", period->period}};
  } else {
    j["ground_truth"] = {{"kind", "subspace"}, {"basis", std::get<HiddenSubspace>(truth).basis}};
  }
  return j;
}

OracleInstance oracle_from_json(const nlohmann::ordered_json& j) {
  DomainSpec domain = domain_from_json(j.at("domain"));
  const auto& gt = j.at("ground_truth");
  const auto kind = gt.at("kind").get<std::string>();
  HiddenStructure truth;
  if (kind == "period") {
    truth = HiddenPeriod{gt.at("d").get<std::uint64_t>()};
  } else if (kind == "subspace") {
    truth = HiddenSubspace{gt.at("basis").get<std::vector<ModVector>>()};
  } else {
    throw DomainError("unknown ground_truth kind '" + kind + "'");
  }
  return OracleInstance(std::move(domain), j.at("table").get<std::vector<Label>>(), j.at("label_count").get<Label>(),
                        std::move(truth), j.value("injective", true));
}

}  // namespace qhs
