// SPDX-License-Identifier: Apache-2.0
//
// Run configuration and report files.
//
// Config (JSON): top-level sections "geometry", "mask", "sampling", "ga",
// plus "mode", "trials", "output_dir" and an optional "rule_base" path.
// Every key is optional; omitted keys keep their defaults, unknown keys are
// rejected.
//
// Report directory:
//   pattern.csv      theta_deg,value_db,region      (region: beam | sidelobe)
//   convergence.csv  generation,best,mean,d_gw,number,p_c,p_m
//   summary.json     mode, seed, fitness, measurements, best phases

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "phasesynth/synthesis.hpp"

namespace phasesynth {

run_config parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
run_config load_config(const std::filesystem::path& path);
std::string serialize_config(const run_config& cfg);

struct run_summary {
  ga_mode mode = ga_mode::sga;
  std::uint64_t seed = 0;
  int generations = 0;
  double initial_best = 0.0;
  double best_fitness = 0.0;
  int generations_to_90 = 0;
  pattern_measurement measurement;
  phase_vector best_phases;
};

run_summary summary_of(const run_report& report);

std::string format_pattern_csv(const pattern_samples& p);
std::string format_convergence_csv(const std::vector<generation_record>& records);
std::string format_summary(const run_summary& s);

pattern_samples parse_pattern_csv(const std::string& text);
std::vector<generation_record> parse_convergence_csv(const std::string& text);
run_summary parse_summary(const std::string& text);

/// Writes pattern.csv, convergence.csv and summary.json into `dir`,
/// creating it if needed. Throws std::runtime_error on I/O failure.
void write_report(const run_report& report, const std::filesystem::path& dir);

/// Writes pattern.csv and summary.json for a pattern evaluated outside a run.
void write_pattern_report(const pattern_samples& p, const pattern_measurement& m, const phase_vector& pv,
                          const std::filesystem::path& dir);

/// Per-trial reports under <dir>/<first|second label>/trial_NNN plus
/// comparison.csv and comparison.json.
void write_campaign(const campaign_result& result, const std::string& first_label, const std::string& second_label,
                    const std::filesystem::path& dir);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace phasesynth
