// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/adaptive_control.hpp"

#include <algorithm>
#include <numeric>

#include "phasesynth/error.hpp"

namespace phasesynth {

diversity_snapshot::diversity_snapshot(double d_gw, double fbar_over_fmax, int number)
    : d_gw_(std::clamp(d_gw, 0.0, diversity_max)),
      ratio_(std::clamp(fbar_over_fmax, 0.0, 1.0)),
      number_(std::clamp(number, 0, stagnation_max)) {}

std::vector<double> gene_average(std::span<const chromosome> individuals) {
  require(!individuals.empty(), "gene average of an empty population");
  const auto length = individuals.front().size();
  std::vector<double> avg(length, 0.0);
  for (const auto& c : individuals) {
    require(c.size() == length, "population has mixed chromosome lengths");
    for (std::size_t j = 0; j < length; ++j) {
      avg[j] += c.bit(j);
    }
  }
  for (auto& a : avg) {
    a /= static_cast<double>(individuals.size());
  }
  return avg;
}

std::vector<double> gene_average(const population& pop) { return gene_average(pop.individuals); }

double gene_diversity(std::span<const chromosome> individuals) {
  const auto avg = gene_average(individuals);
  if (avg.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& c : individuals) {
    for (std::size_t j = 0; j < avg.size(); ++j) {
      const double d = c.bit(j) - avg[j];
      sum += d * d;
    }
  }
  return sum / (static_cast<double>(individuals.size()) * static_cast<double>(avg.size()));
}

double gene_diversity(const population& pop) { return gene_diversity(pop.individuals); }

double convergence_ratio(std::span<const double> fitness, double epsilon) {
  require(!fitness.empty(), "convergence ratio of an empty population");
  const auto [lo_it, hi_it] = std::minmax_element(fitness.begin(), fitness.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi - lo <= 0.0) {
    return 1.0;
  }
  const double mean = std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(fitness.size());
  const double shifted_mean = mean - lo + epsilon;
  const double shifted_max = hi - lo + epsilon;
  return std::clamp(shifted_mean / shifted_max, 0.0, 1.0);
}

double convergence_ratio(const population& pop) { return convergence_ratio(pop.fitness_values()); }

int stagnation_counter(std::span<const double> best_history) {
  require(!best_history.empty(), "stagnation counter needs at least one generation");
  stagnation_tracker t;
  for (double b : best_history) {
    t.record(b);
  }
  return t.count();
}

void stagnation_tracker::record(double best) {
  if (!seeded_ || best > best_ + improvement_threshold) {
    seeded_ = true;
    best_ = best;
    count_ = 0;
    return;
  }
  count_ = std::min(count_ + 1, stagnation_max);
}

diversity_snapshot take_snapshot(const population& pop, int number) {
  return {gene_diversity(pop), convergence_ratio(pop), number};
}

}  // namespace phasesynth
