// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/ga_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "phasesynth/error.hpp"

namespace phasesynth {

chromosome::chromosome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    require(b <= 1, "chromosome bits must be 0 or 1");
  }
}

chromosome chromosome::random(std::size_t length, rng& gen) {
  chromosome c(length);
  for (auto& b : c.bits_) {
    b = static_cast<std::uint8_t>(gen.below(2));
  }
  return c;
}

void chromosome::set_bit(std::size_t i, std::uint8_t value) {
  require(value <= 1, "chromosome bits must be 0 or 1");
  if (bits_[i] != value) {
    bits_[i] = value;
    fitness_.reset();
  }
}

void chromosome::flip(std::size_t i) {
  bits_[i] ^= 1U;
  fitness_.reset();
}

void ga_params::validate() const {
  require(pop_size >= 2 && pop_size % 2 == 0, "population size must be even and at least 2");
  require(bits_per_gene >= 1 && bits_per_gene <= 31, "bits per gene must be in [1, 31]");
  require(p_c >= 0.0 && p_c <= 1.0, "crossover probability must be in [0, 1]");
  require(p_m >= 0.0 && p_m <= 1.0, "mutation probability must be in [0, 1]");
  require(max_generations >= 1, "max_generations must be positive");
  require(elitism_count >= 0 && elitism_count <= pop_size, "elitism count must be in [0, pop_size]");
}

std::vector<double> population::fitness_values() const {
  std::vector<double> out;
  out.reserve(individuals.size());
  for (const auto& c : individuals) {
    require(c.fitness().has_value(), "population has unevaluated individuals");
    out.push_back(*c.fitness());
  }
  return out;
}

double population::best_fitness() const {
  const auto f = fitness_values();
  require(!f.empty(), "empty population");
  return *std::max_element(f.begin(), f.end());
}

double population::mean_fitness() const {
  const auto f = fitness_values();
  require(!f.empty(), "empty population");
  return std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
}

std::size_t chromosome_length(const array_geometry& g, int bits_per_gene) {
  return static_cast<std::size_t>(bits_per_gene) * static_cast<std::size_t>(g.m_elems / 2 + g.n_elems / 2);
}

double gene_to_phase(std::uint64_t value, int bits_per_gene) {
  const double levels = std::ldexp(1.0, bits_per_gene);
  return -std::numbers::pi + static_cast<double>(value) * 2.0 * std::numbers::pi / levels;
}

phase_vector decode(const chromosome& c, const array_geometry& g, int bits_per_gene) {
  const auto length = chromosome_length(g, bits_per_gene);
  require(c.size() == length,
          "chromosome has " + std::to_string(c.size()) + " bits, expected " + std::to_string(length));
  phase_vector pv;
  const auto b = static_cast<std::size_t>(bits_per_gene);
  const auto genes = static_cast<std::size_t>(g.m_elems / 2 + g.n_elems / 2);
  for (std::size_t gene = 0; gene < genes; ++gene) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < b; ++k) {
      v = (v << 1U) | c.bit(gene * b + k);
    }
    const double phase = gene_to_phase(v, bits_per_gene);
    if (gene < static_cast<std::size_t>(g.m_elems / 2)) {
      pv.x_half.push_back(phase);
    } else {
      pv.y_half.push_back(phase);
    }
  }
  return pv;
}

chromosome encode(const phase_vector& pv, const array_geometry& g, int bits_per_gene) {
  pv.validate(g);
  const auto levels = std::uint64_t{1} << static_cast<unsigned>(bits_per_gene);
  chromosome c(chromosome_length(g, bits_per_gene));
  std::size_t pos = 0;
  const auto put = [&](double phase) {
    const double scaled = (phase + std::numbers::pi) * static_cast<double>(levels) / (2.0 * std::numbers::pi);
    auto v = static_cast<std::uint64_t>(std::llround(scaled)) % levels;
    for (int k = bits_per_gene - 1; k >= 0; --k) {
      c.set_bit(pos++, static_cast<std::uint8_t>((v >> static_cast<unsigned>(k)) & 1U));
    }
  };
  std::for_each(pv.x_half.begin(), pv.x_half.end(), put);
  std::for_each(pv.y_half.begin(), pv.y_half.end(), put);
  return c;
}

std::vector<double> roulette_weights(std::span<const double> fitness, double epsilon) {
  require(!fitness.empty(), "no fitness values");
  const double lo = *std::min_element(fitness.begin(), fitness.end());
  std::vector<double> w(fitness.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = fitness[i] - lo + epsilon;
  }
  return w;
}

std::size_t select_by_weight(std::span<const double> weights, rng& gen) {
  require(!weights.empty(), "no weights to select from");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  require(total > 0.0, "selection weights must have a positive sum");
  const double target = gen.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) {
      return i;
    }
  }
  return weights.size() - 1;  // rounding at the top end
}

const chromosome& roulette_select(const population& pop, rng& gen) {
  const auto w = roulette_weights(pop.fitness_values());
  return pop.individuals[select_by_weight(w, gen)];
}

std::pair<chromosome, chromosome> crossover_at(const chromosome& a, const chromosome& b, std::size_t cut) {
  require(a.size() == b.size(), "crossover parents differ in length");
  require(cut <= a.size(), "crossover cut beyond chromosome end");
  std::vector<std::uint8_t> x(a.bits().begin(), a.bits().end());
  std::vector<std::uint8_t> y(b.bits().begin(), b.bits().end());
  std::swap_ranges(x.begin() + static_cast<std::ptrdiff_t>(cut), x.end(), y.begin() + static_cast<std::ptrdiff_t>(cut));
  return {chromosome(std::move(x)), chromosome(std::move(y))};
}

std::pair<chromosome, chromosome> one_point_crossover(const chromosome& a, const chromosome& b, double p_c, rng& gen) {
  require(a.size() == b.size(), "crossover parents differ in length");
  if (a.size() >= 2 && gen.bernoulli(p_c)) {
    const auto cut = 1 + static_cast<std::size_t>(gen.below(a.size() - 1));
    return crossover_at(a, b, cut);
  }
  return {a, b};
}

chromosome bitflip_mutate(const chromosome& c, double p_m, rng& gen) {
  require(p_m >= 0.0 && p_m <= 1.0, "mutation probability must be in [0, 1]");
  chromosome out = c;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (gen.bernoulli(p_m)) {
      out.flip(i);
    }
  }
  return out;
}

namespace {

void refresh_best(population& pop) {
  const auto it = std::max_element(pop.individuals.begin(), pop.individuals.end(),
                                   [](const chromosome& l, const chromosome& r) { return *l.fitness() < *r.fitness(); });
  if (!pop.best_ever.fitness() || *it->fitness() > *pop.best_ever.fitness()) {
    pop.best_ever = *it;
  }
}

}  // namespace

void evaluate(population& pop, const fitness_function& eval) {
  for (auto& c : pop.individuals) {
    if (!c.fitness()) {
      c.set_fitness(eval(c));
    }
  }
}

population initialize_population(const ga_params& params, std::size_t length, const fitness_function& eval, rng& gen) {
  params.validate();
  population pop;
  pop.individuals.reserve(static_cast<std::size_t>(params.pop_size));
  for (int i = 0; i < params.pop_size; ++i) {
    pop.individuals.push_back(chromosome::random(length, gen));
  }
  evaluate(pop, eval);
  refresh_best(pop);
  return pop;
}

population step_generation(const population& pop, const ga_params& params, const fitness_function& eval, double p_c,
                           double p_m, rng& gen) {
  params.validate();
  require(pop.individuals.size() == static_cast<std::size_t>(params.pop_size), "population size changed");
  const auto fitness = pop.fitness_values();
  const auto size = pop.individuals.size();

  population next;
  next.generation = pop.generation + 1;
  next.best_ever = pop.best_ever;
  next.individuals.reserve(size);

  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return fitness[l] > fitness[r]; });
  for (int e = 0; e < params.elitism_count; ++e) {
    next.individuals.push_back(pop.individuals[order[static_cast<std::size_t>(e)]]);
  }

  const auto weights = roulette_weights(fitness);
  while (next.individuals.size() < size) {
    const auto& a = pop.individuals[select_by_weight(weights, gen)];
    const auto& b = pop.individuals[select_by_weight(weights, gen)];
    auto [c1, c2] = one_point_crossover(a, b, p_c, gen);
    next.individuals.push_back(bitflip_mutate(c1, p_m, gen));
    if (next.individuals.size() < size) {
      next.individuals.push_back(bitflip_mutate(c2, p_m, gen));
    }
  }

  evaluate(next, eval);
  refresh_best(next);
  return next;
}

}  // namespace phasesynth
