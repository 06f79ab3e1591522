// SPDX-License-Identifier: Apache-2.0
//
// Synthesis runs: the GA driven with fixed probabilities (SGA) or with the
// fuzzy controller (FGA), pattern measurements, and paired SGA/FGA campaigns.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phasesynth/array_model.hpp"
#include "phasesynth/fuzzy_controller.hpp"
#include "phasesynth/ga_engine.hpp"
#include "phasesynth/pattern_objective.hpp"

namespace phasesynth {

enum class ga_mode { sga, fga };

std::string to_string(ga_mode mode);
ga_mode parse_mode(const std::string& text);

struct run_config {
  array_geometry geometry;
  mask_spec mask;
  sampling_spec sampling;
  ga_params ga;
  ga_mode mode = ga_mode::fga;
  int trials = 1;
  std::filesystem::path output_dir = "phasesynth_out";
  /// Empty means the built-in rule base.
  std::filesystem::path rule_base_path;
  fuzzy_rule_base rules = default_rule_base();

  void validate() const;
};

/// Maps a chromosome to its pattern fitness for one geometry, grid and mask.
class phase_objective {
 public:
  phase_objective(array_geometry g, angle_grid grid, mask_spec mask, int bits_per_gene);

  double operator()(const chromosome& c) const;
  pattern_samples pattern(const chromosome& c) const;
  pattern_samples pattern(const phase_vector& pv) const;

  const angle_grid& grid() const { return grid_; }

 private:
  array_geometry geometry_;
  angle_grid grid_;
  mask_spec mask_;
  int bits_per_gene_;
};

struct pattern_measurement {
  double peak_deg = 0.0;
  double beamwidth_3db_deg = 0.0;
  double max_sll_db = 0.0;
  bool ambiguous_peak = false;
};

/// Peak angle, -3 dB beamwidth (linearly interpolated) and the highest
/// sidelobe-region sample. Ties for the 0 dB peak resolve to the sample
/// nearest steer_deg and set ambiguous_peak.
pattern_measurement measure_pattern(const pattern_samples& p, double steer_deg);

struct generation_record {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
  double d_gw = 0.0;
  int number = 0;
  double p_c = 0.0;
  double p_m = 0.0;
};

struct run_report {
  ga_mode mode = ga_mode::sga;
  std::uint64_t seed = 0;
  double initial_best = 0.0;
  double initial_mean = 0.0;
  std::vector<generation_record> records;  ///< generations 1..max_generations
  phase_vector best_phases;
  double best_fitness = 0.0;
  pattern_samples pattern;
  pattern_measurement measurement;
};

/// One seeded run of max_generations using cfg.ga.rng_seed.
run_report run_synthesis(const run_config& cfg);

/// First generation (0 = initial population) whose best fitness has covered
/// `fraction` of the run's total improvement.
int generations_to_fraction(const run_report& report, double fraction);

struct trial_outcome {
  double final_best = 0.0;
  int generations_to_90 = 0;
  double peak_deg = 0.0;
  double beamwidth_3db_deg = 0.0;
  double max_sll_db = 0.0;
};

trial_outcome summarize(const run_report& report);

struct paired_record {
  int trial = 0;
  std::uint64_t seed = 0;
  trial_outcome first;
  trial_outcome second;
  double fitness_difference = 0.0;  ///< second - first
  bool second_wins = false;
};

struct campaign_summary {
  double first_median_final = 0.0;
  double second_median_final = 0.0;
  double first_median_generations_to_90 = 0.0;
  double second_median_generations_to_90 = 0.0;
  int second_wins = 0;
  int first_wins = 0;
  int ties = 0;
};

struct campaign_result {
  std::vector<paired_record> pairs;
  campaign_summary summary;
  std::vector<run_report> first_reports;
  std::vector<run_report> second_reports;
};

/// Runs both configurations on the same derived seeds. The configurations
/// must share geometry, mask, sampling, population size, encoding and
/// generation budget.
campaign_result compare_campaign(const run_config& first, const run_config& second, int trials,
                                 std::uint64_t campaign_seed);

double median(std::vector<double> values);

}  // namespace phasesynth
