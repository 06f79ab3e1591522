// SPDX-License-Identifier: Apache-2.0
//
// Desired-pattern mask and the beam-average / sidelobe-gap fitness.

#pragma once

#include <span>

#include "phasesynth/array_model.hpp"

namespace phasesynth {

struct mask_spec {
  double steer_deg = 10.0;
  double beam_lo_deg = 0.0;
  double beam_hi_deg = 20.0;
  double sll_db = -20.0;
  double beamwidth_3db_deg = 8.0;
  double w1 = 1.0;

  void validate() const;
};

/// Angular sampling of the pattern cut.
struct sampling_spec {
  double step_deg = 0.5;
  double phi_deg = 0.0;
};

/// Uniform grid over [-90, 90] degrees with the beam region marked.
///
/// The beam region holds the samples strictly inside (beam_lo, beam_hi),
/// trimmed to an odd count 2S+1 centred on the sample nearest steer_deg.
/// Samples at the boundaries themselves belong to the sidelobe region.
angle_grid sample_grid(const mask_spec& mask, const sampling_spec& sampling);

/// Half-width S of the beam region (beam count is 2S+1).
std::size_t beam_half_width(const pattern_samples& p);

/// Mean of the beam-region samples in dB.
double beam_average(const pattern_samples& p);

/// Smallest absolute gap between d_av and any sidelobe sample.
double sidelobe_margin(const pattern_samples& p, double d_av);

/// d_av + w1 * margin; larger is better.
double fitness(const pattern_samples& p, const mask_spec& mask);

/// Beam-average / margin on raw spans; used by the pattern_samples overloads.
double mean_of(std::span<const double> values);
double min_abs_gap(std::span<const double> values, double reference);

}  // namespace phasesynth
