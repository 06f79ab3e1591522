// SPDX-License-Identifier: Apache-2.0
//
// Population measurements fed to the fuzzy parameter controller.

#pragma once

#include <span>
#include <vector>

#include "phasesynth/ga_engine.hpp"

namespace phasesynth {

inline constexpr double diversity_max = 0.25;
inline constexpr int stagnation_max = 30;
inline constexpr double improvement_threshold = 1e-12;

/// Controller inputs, clamped into their ranges on construction.
class diversity_snapshot {
 public:
  diversity_snapshot(double d_gw, double fbar_over_fmax, int number);

  double d_gw() const { return d_gw_; }
  double fbar_over_fmax() const { return ratio_; }
  int number() const { return number_; }

 private:
  double d_gw_;
  double ratio_;
  int number_;
};

/// Per-position mean of the bits across the population.
std::vector<double> gene_average(std::span<const chromosome> individuals);
std::vector<double> gene_average(const population& pop);

/// Mean squared deviation of every bit from its column mean.
double gene_diversity(std::span<const chromosome> individuals);
double gene_diversity(const population& pop);

/// Mean-to-best fitness ratio after shifting by (min - epsilon), clamped to
/// [0, 1]. A population whose fitnesses are all equal reports 1.
double convergence_ratio(std::span<const double> fitness, double epsilon = 1e-9);
double convergence_ratio(const population& pop);

/// Consecutive most-recent generations without strict improvement of the
/// best fitness, clamped to stagnation_max. history[0] is the oldest entry.
int stagnation_counter(std::span<const double> best_history);

/// Incremental form of stagnation_counter.
class stagnation_tracker {
 public:
  void record(double best);
  int count() const { return count_; }

 private:
  bool seeded_ = false;
  double best_ = 0.0;
  int count_ = 0;
};

diversity_snapshot take_snapshot(const population& pop, int number);

}  // namespace phasesynth
