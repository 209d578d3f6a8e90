#include "qhs/oracle.hpp"
#include "qhs/simulator.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace qhs;

TEST(PeriodicOracle, InjectiveOnPeriod) {
  Rng rng(1);
  const auto o = make_periodic_oracle(8, 4, true, rng);
  const auto t = o.table();
  std::vector<Label> first(t.begin(), t.begin() + 4);
  std::sort(first.begin(), first.end());
  EXPECT_EQ(first, (std::vector<Label>{0, 1, 2, 3}));
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(t[k], t[k % 4]);
  EXPECT_EQ(o.label_count(), 4u);
}

TEST(PeriodicOracle, TrivialPeriodIsConstant) {
  Rng rng(2);
  const auto o = make_periodic_oracle(6, 1, true, rng);
  EXPECT_TRUE(std::all_of(o.table().begin(), o.table().end(), [](Label s) { return s == 0; }));
}

TEST(PeriodicOracle, PeriodMustDivideDomain) {
  Rng rng(3);
  try {
    make_periodic_oracle(8, 3, true, rng);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("period must divide domain size"), std::string::npos);
  }
  EXPECT_THROW(make_periodic_oracle(8, 0, true, rng), DomainError);
}

TEST(PeriodicOracle, NonInjectiveStillHasExactPeriod) {
  Rng rng(4);
  for (std::uint64_t d : {1u, 2u, 3u, 6u, 12u}) {
    const auto o = make_periodic_oracle(24, d, false, rng);
    EXPECT_EQ(minimal_period(o), d);
    EXPECT_TRUE(verify_hidden_structure(o));
    EXPECT_FALSE(o.injective());
  }
}

TEST(SubspaceOracle, DiagonalLineHasTwoCosets) {
  Rng rng(5);
  const std::vector<ModVector> basis = {{1, 1}};
  const auto o = make_subspace_oracle(2, 2, basis, rng);
  // Cosets of span{(1,1)} by brute force: {00, 11} and {01, 10}.
  const auto span = brute::brute_span(2, 2, basis);
  std::map<Label, std::set<brute::Vec>> by_label;
  for (std::uint64_t x = 0; x < 4; ++x) by_label[o.table()[x]].insert(element_at(x, o.domain()).coords);
  ASSERT_EQ(by_label.size(), 2u);
  for (const auto& [label, members] : by_label) {
    const auto rep = *members.begin();
    std::set<brute::Vec> coset;
    for (const auto& v : span) coset.insert({(rep[0] + v[0]) % 2, (rep[1] + v[1]) % 2});
    EXPECT_EQ(members, coset);
  }
  EXPECT_EQ(o.label_count(), 2u);
}

TEST(SubspaceOracle, TrivialSubspaceIsInjective) {
  Rng rng(6);
  const auto o = make_subspace_oracle(2, 2, {}, rng);
  std::set<Label> labels(o.table().begin(), o.table().end());
  EXPECT_EQ(labels.size(), 4u);
}

TEST(SubspaceOracle, DependentBasisRejected) {
  Rng rng(7);
  const std::vector<ModVector> basis = {{1, 0}, {1, 0}};
  EXPECT_THROW(make_subspace_oracle(2, 2, basis, rng), DomainError);
  const std::vector<ModVector> bad = {{2, 0}};
  EXPECT_THROW(make_subspace_oracle(2, 2, bad, rng), DomainError);
}

TEST(VerifyHiddenStructure, Examples) {
  Rng rng(8);
  EXPECT_TRUE(verify_hidden_structure(make_periodic_oracle(12, 4, true, rng)));

  // phi(1) != phi(3) breaks period 2.
  const OracleInstance broken(DomainSpec::cyclic(4), {0, 1, 0, 2}, 3, HiddenPeriod{2}, true);
  EXPECT_FALSE(verify_hidden_structure(broken));

  const OracleInstance constant(DomainSpec::product(2, 2), {0, 0, 0, 0}, 1, HiddenSubspace{{{1, 1}}}, true);
  EXPECT_FALSE(verify_hidden_structure(constant));

  // A claimed period that is not minimal.
  const OracleInstance coarse(DomainSpec::cyclic(4), {0, 0, 0, 0}, 1, HiddenPeriod{2}, false);
  EXPECT_FALSE(verify_hidden_structure(coarse));
  // Constant on cosets but sharing labels is fine when injectivity is not claimed.
  const OracleInstance shared(DomainSpec::product(2, 2), {0, 0, 0, 0}, 1, HiddenSubspace{{{1, 1}}}, false);
  EXPECT_TRUE(verify_hidden_structure(shared));
}

TEST(VerifyHiddenStructure, HoldsForThousandsOfGeneratedInstances) {
  Rng rng(9);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    const std::uint64_t m = 1 + rng.below(64);
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d <= m; ++d) {
      if (m % d == 0) divisors.push_back(d);
    }
    const std::uint64_t d = divisors[rng.below(divisors.size())];
    const bool injective = rng.below(2) == 0;
    const auto o = make_periodic_oracle(m, d, injective, rng);
    ASSERT_TRUE(verify_hidden_structure(o)) << "M=" << m << " d=" << d;
    if (injective) ASSERT_EQ(minimal_period(o), d);
    ++checked;
  }
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[rng.below(3)];
    const unsigned n = 1 + static_cast<unsigned>(rng.below(p == 2 ? 5 : 3));
    std::vector<ModVector> gens;
    for (unsigned k = 0, count = static_cast<unsigned>(rng.below(n + 1)); k < count; ++k) {
      ModVector v(n);
      for (auto& x : v) x = rng.below(p);
      gens.push_back(v);
    }
    // Keep an independent subset.
    std::vector<ModVector> basis;
    for (const auto& g : gens) {
      auto trial = basis;
      trial.push_back(g);
      if (SubspaceBasis::independent(p, n, trial)) basis = trial;
    }
    ASSERT_TRUE(verify_hidden_structure(make_subspace_oracle(p, n, basis, rng)));
    ++checked;
  }
  EXPECT_GE(checked, 1000);
}

TEST(MinimalPeriod, Examples) {
  Rng rng(10);
  EXPECT_EQ(minimal_period(OracleInstance(DomainSpec::cyclic(6), std::vector<Label>(6, 0), 1, HiddenPeriod{1}, true)),
            1u);
  EXPECT_EQ(minimal_period(OracleInstance(DomainSpec::cyclic(4), {0, 1, 0, 1}, 2, HiddenPeriod{2}, true)), 2u);

  const auto o = make_periodic_oracle(12, 4, true, rng);
  // Brute force: smallest divisor d of 12 with table(k + d mod 12) == table(k).
  std::uint64_t brute = 0;
  for (std::uint64_t d = 1; d <= 12 && brute == 0; ++d) {
    if (12 % d != 0) continue;
    bool ok = true;
    for (std::uint64_t k = 0; k < 12; ++k) ok = ok && o.table()[(k + d) % 12] == o.table()[k];
    if (ok) brute = d;
  }
  EXPECT_EQ(brute, 4u);
  EXPECT_EQ(minimal_period(o), brute);
  EXPECT_THROW(minimal_period(make_subspace_oracle(2, 2, {}, rng)), DomainError);
}

TEST(OracleUnitary, Examples) {
  const OracleInstance shift(DomainSpec::cyclic(1), {3}, 4, HiddenPeriod{1}, true);
  BipartiteState basis(DomainSpec::cyclic(1), 4);
  basis.at(0, 0) = 1.0;
  const auto moved = apply_oracle_unitary(basis, shift);
  EXPECT_EQ(moved.at(0, 3), Complex(1.0));
  EXPECT_EQ(moved.at(0, 0), Complex(0.0));

  Rng rng(11);
  const OracleInstance zero(DomainSpec::cyclic(3), {0, 0, 0}, 2, HiddenPeriod{1}, true);
  BipartiteState any(DomainSpec::cyclic(3), 2);
  for (auto& z : any.amplitudes) z = {rng.uniform(), rng.uniform()};
  EXPECT_EQ(apply_oracle_unitary(any, zero).amplitudes, any.amplitudes);

  const OracleInstance parity(DomainSpec::cyclic(4), {0, 1, 0, 1}, 2, HiddenPeriod{2}, true);
  BipartiteState uniform(DomainSpec::cyclic(4), 2);
  for (std::uint64_t x = 0; x < 4; ++x) uniform.at(x, 0) = 0.5;
  const auto out = apply_oracle_unitary(uniform, parity);
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (Label s = 0; s < 2; ++s) EXPECT_EQ(out.at(x, s), Complex(s == x % 2 ? 0.5 : 0.0));
  }
}

TEST(OracleUnitary, PreservesNormAndRejectsMismatch) {
  Rng rng(12);
  const auto o = make_periodic_oracle(16, 8, true, rng);
  BipartiteState s(o.domain(), o.label_count());
  for (auto& z : s.amplitudes) z = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  EXPECT_NEAR(squared_norm(apply_oracle_unitary(s, o).amplitudes), squared_norm(s.amplitudes), 1e-12);
  EXPECT_THROW(apply_oracle_unitary(BipartiteState(o.domain(), 3), o), DomainError);
  EXPECT_THROW(apply_oracle_unitary(BipartiteState(DomainSpec::cyclic(8), 8), o), DomainError);
}

TEST(OracleJson, RoundTripKeepsTableAndTruth) {
  Rng rng(13);
  const auto periodic = make_periodic_oracle(DomainSpec::cyclic(12, Grid{2}), 6, true, rng);
  const auto back = oracle_from_json(nlohmann::ordered_json::parse(oracle_to_json(periodic).dump()));
  EXPECT_EQ(back.domain(), periodic.domain());
  EXPECT_TRUE(std::equal(back.table().begin(), back.table().end(), periodic.table().begin()));
  EXPECT_TRUE(Verification::period_is(back, 6));

  const std::vector<ModVector> basis = {{1, 2, 0}};
  const auto sub = make_subspace_oracle(3, 3, basis, rng);
  const auto json = oracle_to_json(sub);
  EXPECT_EQ(json["ground_truth"]["kind"], "subspace");
  const auto sub_back = oracle_from_json(json);
  EXPECT_TRUE(Verification::subspace_is(sub_back, SubspaceBasis::span_of(3, 3, basis)));
  EXPECT_TRUE(verify_hidden_structure(sub_back));
}

TEST(OracleInstance, RejectsMalformedTables) {
  EXPECT_THROW(OracleInstance(DomainSpec::cyclic(4), {0, 1}, 2, HiddenPeriod{2}, true), DomainError);
  EXPECT_THROW(OracleInstance(DomainSpec::cyclic(2), {0, 5}, 2, HiddenPeriod{2}, true), DomainError);
  EXPECT_THROW(OracleInstance(DomainSpec::cyclic(2), {0, 1}, 2, HiddenSubspace{}, true), DomainError);
}

TEST(OracleInstance, RelabelingLeavesMarginalUnchanged) {
  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    const auto o = make_periodic_oracle(48, std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 12, 16, 24, 48}[i % 10],
                                        i % 3 != 0, rng);
    std::vector<Label> bijection(o.label_count());
    std::iota(bijection.begin(), bijection.end(), Label{0});
    rng.shuffle(std::span<Label>(bijection));
    std::vector<Label> relabeled;
    for (Label s : o.table()) relabeled.push_back(bijection[s]);
    const OracleInstance other(o.domain(), relabeled, o.label_count(), Verification::ground_truth(o), o.injective());
    const auto a = left_marginal(o).prob;
    const auto b = left_marginal(other).prob;
    for (std::size_t j = 0; j < a.size(); ++j) ASSERT_NEAR(a[j], b[j], 1e-12);
  }
}
