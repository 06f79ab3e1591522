// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/ga_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "phasesynth/error.hpp"

namespace phasesynth {
namespace {

constexpr double pi = std::numbers::pi;

chromosome from_string(const std::string& s) {
  std::vector<std::uint8_t> bits;
  for (char ch : s) {
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return chromosome(bits);
}

std::string to_bits(const chromosome& c) {
  std::string s;
  for (auto b : c.bits()) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

// Counts ones; a simple landscape with a known optimum.
double ones(const chromosome& c) { return std::accumulate(c.bits().begin(), c.bits().end(), 0.0); }

population with_fitness(const std::vector<double>& f, std::size_t length = 4) {
  population pop;
  for (double v : f) {
    chromosome c(length);
    c.set_fitness(v);
    pop.individuals.push_back(c);
  }
  return pop;
}

std::vector<double> selection_frequencies(const population& pop, int draws, std::uint64_t seed) {
  rng gen(seed);
  std::vector<double> freq(pop.individuals.size(), 0.0);
  for (int i = 0; i < draws; ++i) {
    const auto& pick = roulette_select(pop, gen);
    freq[static_cast<std::size_t>(&pick - pop.individuals.data())] += 1.0 / draws;
  }
  return freq;
}

// ---------------------------------------------------------------------------
// Chromosome and parameters
// ---------------------------------------------------------------------------

TEST(ChromosomeTest, BitChangesInvalidateCache) {
  auto c = from_string("0101");
  c.set_fitness(3.0);
  c.set_bit(1, 1);
  EXPECT_TRUE(c.fitness().has_value());
  c.set_bit(0, 1);
  EXPECT_FALSE(c.fitness().has_value());
  c.set_fitness(2.0);
  c.flip(3);
  EXPECT_FALSE(c.fitness().has_value());
  EXPECT_EQ(to_bits(c), "1100");
}

TEST(ChromosomeTest, RejectsNonBinaryValues) {
  EXPECT_THROW(chromosome(std::vector<std::uint8_t>{0, 2}), contract_violation);
}

TEST(GaParamsTest, Validation) {
  ga_params p;
  EXPECT_NO_THROW(p.validate());
  p.pop_size = 41;
  EXPECT_THROW(p.validate(), contract_violation);
  p = ga_params{};
  p.p_m = 1.5;
  EXPECT_THROW(p.validate(), contract_violation);
  p = ga_params{};
  p.elitism_count = 41;
  EXPECT_THROW(p.validate(), contract_violation);
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

TEST(DecodeTest, LengthForDefaultGeometry) {
  EXPECT_EQ(chromosome_length(array_geometry{}, 8), 96u);
}

TEST(DecodeTest, AllZeroBitsGiveMinusPi) {
  array_geometry g;
  g.m_elems = 4;
  g.n_elems = 2;
  const auto pv = decode(chromosome(24), g, 8);
  ASSERT_EQ(pv.x_half.size(), 2u);
  ASSERT_EQ(pv.y_half.size(), 1u);
  for (double p : pv.x_half) {
    EXPECT_EQ(p, -pi);
  }
  EXPECT_EQ(pv.y_half[0], -pi);
}

TEST(DecodeTest, MidpointAndTopCodeWords) {
  EXPECT_EQ(gene_to_phase(128, 8), 0.0);
  EXPECT_NEAR(gene_to_phase(255, 8), 3.117048960983623, 1e-12);

  array_geometry g;
  g.m_elems = 2;
  g.n_elems = 2;
  const auto pv = decode(from_string("1000000011111111"), g, 8);
  EXPECT_EQ(pv.x_half[0], 0.0);
  EXPECT_NEAR(pv.y_half[0], -pi + 255.0 * 2.0 * pi / 256.0, 1e-15);
}

TEST(DecodeTest, LengthMismatchIsAContractViolation) {
  EXPECT_THROW(decode(chromosome(95), array_geometry{}, 8), contract_violation);
}

TEST(DecodeTest, EncodeRoundTripsEveryCodeWord) {
  rng gen(3);
  const array_geometry g;
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = chromosome::random(96, gen);
    EXPECT_TRUE(encode(decode(c, g, 8), g, 8).same_bits(c));
  }
}

// ---------------------------------------------------------------------------
// Selection
// ---------------------------------------------------------------------------

TEST(RouletteTest, WeightsShiftByMinimum) {
  const std::vector<double> f{-10.0, -7.0, -4.0};
  const auto w = roulette_weights(f, 0.0);
  EXPECT_EQ(w, (std::vector<double>{0.0, 3.0, 6.0}));
}

TEST(RouletteTest, ThreeToOneSplit) {
  const auto freq = selection_frequencies(with_fitness({3.0, 1.0, 0.0}), 100000, 5);
  // Shifted weights (3, 1, ~0).
  EXPECT_NEAR(freq[0], 0.75, 0.01);
  EXPECT_NEAR(freq[1], 0.25, 0.01);
}

TEST(RouletteTest, EqualFitnessIsUniform) {
  const auto freq = selection_frequencies(with_fitness({-2.0, -2.0, -2.0, -2.0, -2.0}), 100000, 7);
  for (double f : freq) {
    EXPECT_NEAR(f, 0.2, 0.01);
  }
}

TEST(RouletteTest, LinearWeights) {
  const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
  rng gen(9);
  std::vector<double> freq(4, 0.0);
  for (int i = 0; i < 100000; ++i) {
    freq[select_by_weight(w, gen)] += 1e-5;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(freq[i], 0.1 * static_cast<double>(i + 1), 0.01);
  }
}

// ---------------------------------------------------------------------------
// Variation operators
// ---------------------------------------------------------------------------

TEST(CrossoverTest, ZeroProbabilityCopiesParents) {
  rng gen(1);
  const auto a = from_string("000000");
  const auto b = from_string("111111");
  for (int i = 0; i < 100; ++i) {
    const auto [c, d] = one_point_crossover(a, b, 0.0, gen);
    EXPECT_TRUE(c.same_bits(a));
    EXPECT_TRUE(d.same_bits(b));
  }
}

TEST(CrossoverTest, CutAtThree) {
  auto a = from_string("000000");
  a.set_fitness(1.0);
  const auto [c, d] = crossover_at(a, from_string("111111"), 3);
  EXPECT_EQ(to_bits(c), "000111");
  EXPECT_EQ(to_bits(d), "111000");
  EXPECT_FALSE(c.fitness().has_value());
}

TEST(CrossoverTest, CutNeverAtTheEnds) {
  rng gen(2);
  const auto a = from_string("0000");
  const auto b = from_string("1111");
  for (int i = 0; i < 1000; ++i) {
    const auto [c, d] = one_point_crossover(a, b, 1.0, gen);
    EXPECT_FALSE(c.same_bits(a));
    EXPECT_FALSE(c.same_bits(b));
  }
}

TEST(CrossoverTest, ColumnMultisetsAreConserved) {
  rng gen(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = chromosome::random(96, gen);
    const auto b = chromosome::random(96, gen);
    const auto [c, d] = one_point_crossover(a, b, 1.0, gen);
    for (std::size_t j = 0; j < 96; ++j) {
      EXPECT_EQ(c.bit(j) + d.bit(j), a.bit(j) + b.bit(j));
    }
  }
}

TEST(MutationTest, ZeroAndOneProbability) {
  rng gen(6);
  const auto c = from_string("0110100");
  EXPECT_TRUE(bitflip_mutate(c, 0.0, gen).same_bits(c));
  EXPECT_EQ(to_bits(bitflip_mutate(c, 1.0, gen)), "1001011");
  EXPECT_THROW(bitflip_mutate(c, -0.1, gen), contract_violation);
}

TEST(MutationTest, MeanFlipCount) {
  rng gen(8);
  const chromosome c(96);
  double total = 0.0;
  const int runs = 100000;
  for (int i = 0; i < runs; ++i) {
    total += ones(bitflip_mutate(c, 0.02, gen));
  }
  EXPECT_NEAR(total / runs, 1.92, 0.05);
}

TEST(MutationTest, UnchangedChildKeepsItsCache) {
  rng gen(10);
  auto c = from_string("0101");
  c.set_fitness(2.0);
  EXPECT_TRUE(bitflip_mutate(c, 0.0, gen).fitness().has_value());
  EXPECT_FALSE(bitflip_mutate(c, 1.0, gen).fitness().has_value());
}

// ---------------------------------------------------------------------------
// Generations
// ---------------------------------------------------------------------------

TEST(StepGenerationTest, BestEverIsMonotoneWithElitism) {
  ga_params params;
  params.pop_size = 20;
  rng gen(12);
  auto pop = initialize_population(params, 40, ones, gen);
  double prev = *pop.best_ever.fitness();
  for (int t = 0; t < 100; ++t) {
    pop = step_generation(pop, params, ones, 0.9, 0.05, gen);
    EXPECT_EQ(pop.generation, t + 1);
    EXPECT_EQ(pop.individuals.size(), 20u);
    EXPECT_GE(*pop.best_ever.fitness(), prev);
    EXPECT_GE(pop.best_fitness(), prev);
    prev = *pop.best_ever.fitness();
  }
  EXPECT_GT(prev, 30.0);
}

TEST(StepGenerationTest, InertOperatorsWithFullElitismAreAFixedPoint) {
  ga_params params;
  params.pop_size = 10;
  params.elitism_count = 10;
  rng gen(14);
  const auto pop = initialize_population(params, 16, ones, gen);
  auto next = step_generation(pop, params, ones, 0.0, 0.0, gen);
  auto sorted_bits = [](const population& p) {
    std::vector<std::string> out;
    for (const auto& c : p.individuals) {
      out.push_back(to_bits(c));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(sorted_bits(next), sorted_bits(pop));
  next = step_generation(next, params, ones, 0.0, 0.0, gen);
  EXPECT_EQ(sorted_bits(next), sorted_bits(pop));
}

TEST(StepGenerationTest, SameSeedReplaysBitForBit) {
  ga_params params;
  auto run = [&](std::uint64_t seed) {
    rng gen(seed);
    auto pop = initialize_population(params, 96, ones, gen);
    for (int t = 0; t < 30; ++t) {
      pop = step_generation(pop, params, ones, 0.71, 0.02, gen);
    }
    return pop;
  };
  const auto a = run(99);
  const auto b = run(99);
  for (std::size_t i = 0; i < a.individuals.size(); ++i) {
    EXPECT_TRUE(a.individuals[i].same_bits(b.individuals[i]));
  }
  const auto c = run(100);
  bool differs = false;
  for (std::size_t i = 0; i < a.individuals.size(); ++i) {
    differs = differs || !a.individuals[i].same_bits(c.individuals[i]);
  }
  EXPECT_TRUE(differs);
}

TEST(StepGenerationTest, UnevaluatedPopulationIsRejected) {
  ga_params params;
  params.pop_size = 2;
  population pop;
  pop.individuals = {chromosome(4), chromosome(4)};
  rng gen(1);
  EXPECT_THROW(step_generation(pop, params, ones, 0.5, 0.5, gen), contract_violation);
}

}  // namespace
}  // namespace phasesynth
