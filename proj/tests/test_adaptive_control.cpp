// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/adaptive_control.hpp"

#include <gtest/gtest.h>

#include "phasesynth/error.hpp"

namespace phasesynth {
namespace {

std::vector<chromosome> from_strings(const std::vector<std::string>& rows) {
  std::vector<chromosome> out;
  for (const auto& s : rows) {
    std::vector<std::uint8_t> bits;
    for (char ch : s) {
      bits.push_back(ch == '1' ? 1 : 0);
    }
    out.emplace_back(bits);
  }
  return out;
}

TEST(GeneAverageTest, ColumnMeans) {
  EXPECT_EQ(gene_average(from_strings({"111", "111"})), (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(gene_average(from_strings({"0", "1"})), (std::vector<double>{0.5}));
  const auto avg = gene_average(from_strings({"110", "100", "000"}));
  EXPECT_DOUBLE_EQ(avg[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(avg[1], 1.0 / 3.0);
  EXPECT_EQ(avg[2], 0.0);
}

TEST(GeneAverageTest, EmptyOrRaggedPopulationIsAContractViolation) {
  EXPECT_THROW(gene_average(std::vector<chromosome>{}), contract_violation);
  EXPECT_THROW(gene_average(from_strings({"10", "101"})), contract_violation);
}

TEST(GeneDiversityTest, ClonesComplementsAndFullTable) {
  EXPECT_EQ(gene_diversity(from_strings({"1011", "1011", "1011"})), 0.0);
  EXPECT_EQ(gene_diversity(from_strings({"10110", "01001"})), 0.25);
  EXPECT_EQ(gene_diversity(from_strings({"00", "01", "10", "11"})), 0.25);
}

TEST(GeneDiversityTest, MatchesBernoulliVarianceForm) {
  rng gen(21);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<chromosome> pop;
    const auto size = 1 + gen.below(12);
    for (std::uint64_t i = 0; i < size; ++i) {
      pop.push_back(chromosome::random(17, gen));
    }
    const auto avg = gene_average(pop);
    double alt = 0.0;
    for (double g : avg) {
      alt += g * (1.0 - g);
    }
    alt /= static_cast<double>(avg.size());
    const double d = gene_diversity(pop);
    EXPECT_NEAR(d, alt, 1e-15);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 0.25);
  }
}

TEST(ConvergenceRatioTest, Examples) {
  EXPECT_EQ(convergence_ratio(std::vector<double>{-4.0, -4.0, -4.0}), 1.0);
  EXPECT_NEAR(convergence_ratio(std::vector<double>{0.0, 10.0}), 0.5, 1e-9);
  EXPECT_NEAR(convergence_ratio(std::vector<double>{0.0, 2.0, 4.0, 10.0}), 0.4, 1e-9);
  // Only the spread above the minimum matters.
  EXPECT_NEAR(convergence_ratio(std::vector<double>{-30.0, -28.0, -26.0, -20.0}), 0.4, 1e-9);
  EXPECT_THROW(convergence_ratio(std::vector<double>{}), contract_violation);
}

TEST(ConvergenceRatioTest, AlwaysInUnitInterval) {
  rng gen(22);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> f(1 + gen.below(20));
    for (auto& v : f) {
      v = -40.0 + 60.0 * gen.uniform();
    }
    const double r = convergence_ratio(f);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
}

TEST(StagnationCounterTest, Examples) {
  EXPECT_EQ(stagnation_counter(std::vector<double>{1.0, 2.0}), 0);
  EXPECT_EQ(stagnation_counter(std::vector<double>{1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0}), 5);
  EXPECT_EQ(stagnation_counter(std::vector<double>(101, -3.0)), 30);
  EXPECT_EQ(stagnation_counter(std::vector<double>{5.0}), 0);
  EXPECT_THROW(stagnation_counter(std::vector<double>{}), contract_violation);
}

TEST(StagnationCounterTest, SubThresholdGainsDoNotReset) {
  EXPECT_EQ(stagnation_counter(std::vector<double>{1.0, 1.0 + 1e-13, 1.0 + 2e-13}), 2);
  EXPECT_EQ(stagnation_counter(std::vector<double>{1.0, 1.0, 1.0 + 1e-9}), 0);
}

TEST(StagnationCounterTest, TrackerMatchesBatchForm) {
  rng gen(23);
  std::vector<double> history;
  stagnation_tracker tracker;
  double best = 0.0;
  for (int t = 0; t < 300; ++t) {
    if (gen.bernoulli(0.1)) {
      best += gen.uniform();
    }
    history.push_back(best);
    tracker.record(best);
    EXPECT_EQ(tracker.count(), stagnation_counter(history));
  }
}

TEST(DiversitySnapshotTest, ClampsIntoRanges) {
  const diversity_snapshot s(0.4, -0.1, 45);
  EXPECT_EQ(s.d_gw(), 0.25);
  EXPECT_EQ(s.fbar_over_fmax(), 0.0);
  EXPECT_EQ(s.number(), 30);
}

TEST(DiversitySnapshotTest, TakenFromPopulation) {
  population pop;
  pop.individuals = from_strings({"00", "01", "10", "11"});
  const std::vector<double> f{0.0, 2.0, 4.0, 10.0};
  for (std::size_t i = 0; i < f.size(); ++i) {
    pop.individuals[i].set_fitness(f[i]);
  }
  const auto s = take_snapshot(pop, 7);
  EXPECT_EQ(s.d_gw(), 0.25);
  EXPECT_NEAR(s.fbar_over_fmax(), 0.4, 1e-9);
  EXPECT_EQ(s.number(), 7);
}

}  // namespace
}  // namespace phasesynth
