// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/pattern_objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasesynth/error.hpp"

namespace phasesynth {

namespace {

const index_span& beam_of(const pattern_samples& p) {
  require(p.beam.has_value() && p.beam->count > 0, "pattern has no beam region");
  require(p.beam->count % 2 == 1, "beam region must hold an odd number of samples");
  require(p.beam->last() < p.values_db.size(), "beam region outside the pattern");
  return *p.beam;
}

}  // namespace

void mask_spec::validate() const {
  require(beam_lo_deg < steer_deg && steer_deg < beam_hi_deg, "steer angle must lie inside the beam region");
  require(beam_lo_deg >= -90.0 && beam_hi_deg <= 90.0, "beam region must lie within [-90, 90]");
  require(sll_db < 0.0, "sidelobe level must be negative");
  require(w1 >= 0.0, "sidelobe weight must be non-negative");
  require(beamwidth_3db_deg >= 0.0, "beamwidth must be non-negative");
}

angle_grid sample_grid(const mask_spec& mask, const sampling_spec& sampling) {
  mask.validate();
  require(sampling.step_deg > 0.0, "grid step must be positive");
  const double intervals = 180.0 / sampling.step_deg;
  const double rounded = std::round(intervals);
  require(std::abs(intervals - rounded) < 1e-9 * std::max(1.0, rounded), "grid step must divide 180 degrees");
  require(mask.beam_hi_deg - mask.beam_lo_deg >= sampling.step_deg, "beam region is narrower than one grid step");

  angle_grid grid;
  grid.phi_deg = sampling.phi_deg;
  const auto n = static_cast<std::size_t>(rounded) + 1;
  grid.theta_deg.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.theta_deg[i] = -90.0 + static_cast<double>(i) * sampling.step_deg;
  }
  grid.theta_deg.back() = 90.0;

  // Samples strictly inside the open beam interval, with a small tolerance so
  // that grid points landing on the boundaries stay in the sidelobe set.
  const double tol = 1e-9 * sampling.step_deg;
  std::size_t lo = n;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.theta_deg[i];
    if (t > mask.beam_lo_deg + tol && t < mask.beam_hi_deg - tol) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  require(lo < n, "beam region is narrower than one grid step");

  std::size_t centre = lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (std::abs(grid.theta_deg[i] - mask.steer_deg) < std::abs(grid.theta_deg[centre] - mask.steer_deg)) {
      centre = i;
    }
  }
  const std::size_t half = std::min(centre - lo, hi - centre);
  grid.beam = index_span{centre - half, 2 * half + 1};
  return grid;
}

std::size_t beam_half_width(const pattern_samples& p) { return (beam_of(p).count - 1) / 2; }

double mean_of(std::span<const double> values) {
  require(!values.empty(), "cannot average an empty sample set");
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  return sum / static_cast<double>(values.size());
}

double min_abs_gap(std::span<const double> values, double reference) {
  require(!values.empty(), "sidelobe set is empty");
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) {
    best = std::min(best, std::abs(reference - v));
  }
  return best;
}

double beam_average(const pattern_samples& p) {
  const auto& beam = beam_of(p);
  return mean_of(std::span<const double>(p.values_db).subspan(beam.first, beam.count));
}

double sidelobe_margin(const pattern_samples& p, double d_av) {
  const auto& beam = beam_of(p);
  const std::span<const double> all(p.values_db);
  const auto below = all.first(beam.first);
  const auto above = all.subspan(beam.first + beam.count);
  require(!below.empty() || !above.empty(), "sidelobe set is empty");
  double best = std::numeric_limits<double>::infinity();
  if (!below.empty()) {
    best = std::min(best, min_abs_gap(below, d_av));
  }
  if (!above.empty()) {
    best = std::min(best, min_abs_gap(above, d_av));
  }
  return best;
}

double fitness(const pattern_samples& p, const mask_spec& mask) {
  const double d_av = beam_average(p);
  return d_av + mask.w1 * sidelobe_margin(p, d_av);
}

}  // namespace phasesynth
