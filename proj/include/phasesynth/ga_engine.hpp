// SPDX-License-Identifier: Apache-2.0
//
// Binary-coded generational GA: roulette selection, one-point crossover,
// bit-flip mutation and elitism. Crossover and mutation probabilities are
// passed per generation so an external controller can steer them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "phasesynth/array_model.hpp"
#include "phasesynth/rng.hpp"

namespace phasesynth {

/// Fixed-length bit string. Each gene is a bits_per_gene chunk encoding one
/// phase, most significant bit first; x-axis genes precede y-axis genes.
class chromosome {
 public:
  chromosome() = default;
  explicit chromosome(std::size_t length) : bits_(length, 0) {}
  explicit chromosome(std::vector<std::uint8_t> bits);

  static chromosome random(std::size_t length, rng& gen);

  std::size_t size() const { return bits_.size(); }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::uint8_t bit(std::size_t i) const { return bits_[i]; }

  void set_bit(std::size_t i, std::uint8_t value);
  void flip(std::size_t i);

  const std::optional<double>& fitness() const { return fitness_; }
  void set_fitness(double f) { fitness_ = f; }
  void clear_fitness() { fitness_.reset(); }

  /// Bitwise equality; the fitness cache is not compared.
  bool same_bits(const chromosome& other) const { return bits_ == other.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::optional<double> fitness_;
};

struct ga_params {
  int pop_size = 40;
  int bits_per_gene = 8;
  double p_c = 0.71;
  double p_m = 0.02;
  int max_generations = 200;
  int elitism_count = 1;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct population {
  std::vector<chromosome> individuals;
  int generation = 0;
  chromosome best_ever;

  /// Fitness of every individual; all must be evaluated.
  std::vector<double> fitness_values() const;
  double best_fitness() const;
  double mean_fitness() const;
};

using fitness_function = std::function<double(const chromosome&)>;

/// Number of bits for a geometry: bits_per_gene * (M/2 + N/2).
std::size_t chromosome_length(const array_geometry& g, int bits_per_gene);

/// Phase of one gene value v: -pi + v * 2*pi / 2^b.
double gene_to_phase(std::uint64_t value, int bits_per_gene);

phase_vector decode(const chromosome& c, const array_geometry& g, int bits_per_gene);

/// Inverse of decode up to quantization (nearest code word); used to seed
/// runs and in tests.
chromosome encode(const phase_vector& pv, const array_geometry& g, int bits_per_gene);

/// Roulette weights: f_i - min(f) + epsilon, so negative fitness is allowed.
std::vector<double> roulette_weights(std::span<const double> fitness, double epsilon = 1e-9);

/// Index drawn with probability proportional to its weight.
std::size_t select_by_weight(std::span<const double> weights, rng& gen);

const chromosome& roulette_select(const population& pop, rng& gen);

/// Swaps the suffixes starting at `cut`; caches are cleared.
std::pair<chromosome, chromosome> crossover_at(const chromosome& a, const chromosome& b, std::size_t cut);

std::pair<chromosome, chromosome> one_point_crossover(const chromosome& a, const chromosome& b, double p_c, rng& gen);

chromosome bitflip_mutate(const chromosome& c, double p_m, rng& gen);

/// Evaluates every individual lacking a cached fitness.
void evaluate(population& pop, const fitness_function& eval);

/// Random evaluated initial population (generation 0).
population initialize_population(const ga_params& params, std::size_t length, const fitness_function& eval, rng& gen);

/// One generational step: elites copied, the rest bred by roulette selection,
/// crossover with p_c and mutation with p_m. All random draws happen before
/// evaluation.
population step_generation(const population& pop, const ga_params& params, const fitness_function& eval, double p_c,
                           double p_m, rng& gen);

}  // namespace phasesynth
