// SPDX-License-Identifier: Apache-2.0
//
// Mamdani fuzzy controller mapping (D_gw, fbar/fmax, Number) to the GA's
// crossover and mutation probabilities.
//
// Every variable is partitioned by triangular terms whose peaks are listed in
// increasing order; each triangle falls to zero at its neighbours' peaks, so
// memberships of any in-range point sum to one. Rules combine input degrees
// with min, consequents aggregate with max, and the crisp output is the
// centroid over a uniform discretization of the output range.

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "phasesynth/adaptive_control.hpp"

namespace phasesynth {

struct linguistic_variable {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::string> term_names;
  std::vector<double> peaks;  ///< strictly increasing; first == lo, last == hi

  void validate() const;
  std::size_t term_count() const { return peaks.size(); }
  int term_index(const std::string& term) const;  ///< -1 when unknown

  /// Degree of term t at x (x is clamped to [lo, hi]).
  double membership(std::size_t t, double x) const;
  std::vector<double> fuzzify(double x) const;
};

struct fuzzy_rule {
  std::array<int, 3> antecedent{};  ///< term index per input: d_gw, ratio, number
  int p_c_term = 0;
  int p_m_term = 0;
};

struct control_output {
  double p_c = 0.0;
  double p_m = 0.0;
};

struct fuzzy_rule_base {
  std::array<linguistic_variable, 3> inputs;  ///< d_gw, fbar_over_fmax, number
  linguistic_variable p_c;
  linguistic_variable p_m;
  std::vector<fuzzy_rule> rules;
  int resolution = 1001;

  /// Checks term partitions and that the rule table covers every input term
  /// combination exactly once.
  void validate() const;
};

/// The shipped 3x3x3 rule base (also stored in data/fuzzy_rules.json).
fuzzy_rule_base default_rule_base();

fuzzy_rule_base load_rule_base(const std::filesystem::path& path);
fuzzy_rule_base parse_rule_base(const std::string& json_text);
std::string serialize_rule_base(const fuzzy_rule_base& rb);

/// Centroid of the max-aggregated, min-clipped output terms. `strengths[t]`
/// is the firing level applied to output term t. Returns the range midpoint
/// when nothing fires.
double defuzzify_centroid(const linguistic_variable& out, const std::vector<double>& strengths, int resolution);

control_output infer(const diversity_snapshot& snapshot, const fuzzy_rule_base& rb);

}  // namespace phasesynth
