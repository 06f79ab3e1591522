// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "phasesynth/error.hpp"

namespace phasesynth {

namespace {

constexpr double deg = std::numbers::pi / 180.0;

double sinc(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x; }

void check_matrix(const phase_matrix& phases, const array_geometry& g) {
  require(phases.rows() == g.m_elems && phases.cols() == g.n_elems,
          "phase matrix is " + std::to_string(phases.rows()) + "x" + std::to_string(phases.cols()) +
              " but geometry is " + std::to_string(g.m_elems) + "x" + std::to_string(g.n_elems));
}

// One axis of the antisymmetric layout: the element pair at +/-pos with
// phases +/-psi contributes exp(j a) + exp(-j a) = 2 cos(a), a = 2 pi pos u + psi.
double half_axis_sum(std::span<const double> outer_positions, std::span<const double> half_phases, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < half_phases.size(); ++i) {
    acc += 2.0 * std::cos(2.0 * std::numbers::pi * outer_positions[i] * u + half_phases[i]);
  }
  return acc;
}

pattern_samples make_samples(const angle_grid& grid, std::vector<double> magnitude, double null_threshold) {
  pattern_samples out;
  out.angles_deg = grid.theta_deg;
  out.values_db = to_normalized_db(magnitude, null_threshold);
  out.beam = grid.beam;
  return out;
}

}  // namespace

double array_geometry::wavenumber() const { return 2.0 * std::numbers::pi / wavelength_m(); }

void array_geometry::validate() const {
  require(m_elems >= 2 && n_elems >= 2, "array needs at least 2 elements per axis");
  require(m_elems % 2 == 0 && n_elems % 2 == 0, "element counts must be even for the antisymmetric layout");
  require(dx > 0.0 && dy > 0.0, "element spacing must be positive");
  require(frequency_hz > 0.0, "frequency must be positive");
  if (const auto* patch = std::get_if<rectangular_patch>(&element)) {
    require(patch->width_m > 0.0 && patch->length_m > 0.0, "patch dimensions must be positive");
  }
}

void phase_vector::validate(const array_geometry& g) const {
  require(x_half.size() == static_cast<std::size_t>(g.m_elems / 2),
          "x half-vector has " + std::to_string(x_half.size()) + " phases, expected " + std::to_string(g.m_elems / 2));
  require(y_half.size() == static_cast<std::size_t>(g.n_elems / 2),
          "y half-vector has " + std::to_string(y_half.size()) + " phases, expected " + std::to_string(g.n_elems / 2));
  const auto in_range = [](double p) { return p >= -std::numbers::pi && p < std::numbers::pi; };
  require(std::all_of(x_half.begin(), x_half.end(), in_range) && std::all_of(y_half.begin(), y_half.end(), in_range),
          "phases must lie in [-pi, pi)");
}

void angle_grid::validate() const {
  require(!theta_deg.empty(), "angle grid is empty");
  for (std::size_t i = 0; i < theta_deg.size(); ++i) {
    require(theta_deg[i] >= -90.0 && theta_deg[i] <= 90.0, "theta outside [-90, 90] degrees");
    if (i > 0) {
      require(theta_deg[i] > theta_deg[i - 1], "theta values must be strictly increasing");
    }
  }
  if (beam) {
    require(beam->count > 0 && beam->last() < theta_deg.size(), "beam span outside the grid");
  }
}

double null_magnitude(const array_geometry& g) { return 1e-12 * g.m_elems * g.n_elems; }

std::vector<double> element_positions(int count, double spacing) {
  std::vector<double> pos(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    pos[static_cast<std::size_t>(i)] = (i - (count - 1) / 2.0) * spacing;
  }
  return pos;
}

std::vector<double> expand_axis(std::span<const double> half) {
  std::vector<double> full;
  full.reserve(half.size() * 2);
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    full.push_back(-*it);
  }
  full.insert(full.end(), half.begin(), half.end());
  return full;
}

phase_matrix expand_symmetric(const phase_vector& pv, const array_geometry& g) {
  g.validate();
  pv.validate(g);
  const auto px = expand_axis(pv.x_half);
  const auto py = expand_axis(pv.y_half);
  phase_matrix out(g.m_elems, g.n_elems);
  for (int m = 0; m < g.m_elems; ++m) {
    for (int n = 0; n < g.n_elems; ++n) {
      out(m, n) = px[static_cast<std::size_t>(m)] + py[static_cast<std::size_t>(n)];
    }
  }
  return out;
}

double element_pattern(double theta_deg, double phi_deg, const array_geometry& g) {
  const auto* patch = std::get_if<rectangular_patch>(&g.element);
  if (patch == nullptr) {
    return 1.0;
  }
  const double k = g.wavenumber();
  const double st = std::sin(theta_deg * deg);
  const double ct = std::cos(theta_deg * deg);
  const double sp = std::sin(phi_deg * deg);
  const double cp = std::cos(phi_deg * deg);
  // Two radiating slots separated by the patch length, each with a uniform
  // aperture across the width.
  const double width_term = sinc(0.5 * k * patch->width_m * st * sp);
  const double slot_term = std::cos(0.5 * k * patch->length_m * st * cp);
  const double polarization = std::sqrt(cp * cp + ct * ct * sp * sp);
  return std::abs(width_term * slot_term) * polarization;
}

std::vector<double> raw_magnitude_separable(const phase_vector& pv, const array_geometry& g, const angle_grid& grid) {
  g.validate();
  pv.validate(g);
  grid.validate();
  // Positive-side positions, innermost first, matching the half-vector order.
  const auto xpos = element_positions(g.m_elems, g.dx);
  const auto ypos = element_positions(g.n_elems, g.dy);
  const std::span<const double> xout(xpos.data() + g.m_elems / 2, static_cast<std::size_t>(g.m_elems / 2));
  const std::span<const double> yout(ypos.data() + g.n_elems / 2, static_cast<std::size_t>(g.n_elems / 2));
  const double cp = std::cos(grid.phi_deg * deg);
  const double sp = std::sin(grid.phi_deg * deg);

  std::vector<double> mag(grid.theta_deg.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double st = std::sin(grid.theta_deg[i] * deg);
    const double fx = std::abs(half_axis_sum(xout, pv.x_half, st * cp));
    const double fy = std::abs(half_axis_sum(yout, pv.y_half, st * sp));
    mag[i] = fx * fy * element_pattern(grid.theta_deg[i], grid.phi_deg, g);
  }
  return mag;
}

std::vector<double> raw_magnitude_bruteforce(const phase_matrix& phases, const array_geometry& g, const angle_grid& grid) {
  g.validate();
  check_matrix(phases, g);
  grid.validate();
  const auto xpos = element_positions(g.m_elems, g.dx);
  const auto ypos = element_positions(g.n_elems, g.dy);
  const double cp = std::cos(grid.phi_deg * deg);
  const double sp = std::sin(grid.phi_deg * deg);

  std::vector<double> mag(grid.theta_deg.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double st = std::sin(grid.theta_deg[i] * deg);
    std::complex<double> acc{0.0, 0.0};
    for (int m = 0; m < g.m_elems; ++m) {
      for (int n = 0; n < g.n_elems; ++n) {
        const double path = xpos[static_cast<std::size_t>(m)] * st * cp + ypos[static_cast<std::size_t>(n)] * st * sp;
        acc += std::polar(1.0, 2.0 * std::numbers::pi * path + phases(m, n));
      }
    }
    mag[i] = std::abs(acc) * element_pattern(grid.theta_deg[i], grid.phi_deg, g);
  }
  return mag;
}

std::vector<double> to_normalized_db(std::span<const double> magnitude, double null_threshold) {
  require(!magnitude.empty(), "no pattern samples to normalize");
  const double peak = *std::max_element(magnitude.begin(), magnitude.end());
  std::vector<double> db(magnitude.size(), pattern_floor_db);
  if (peak <= null_threshold) {
    return db;
  }
  for (std::size_t i = 0; i < db.size(); ++i) {
    const double ratio = magnitude[i] / peak;
    if (ratio > 0.0) {
      db[i] = std::max(20.0 * std::log10(ratio), pattern_floor_db);
    }
  }
  return db;
}

pattern_samples array_factor_separable(const phase_vector& pv, const array_geometry& g, const angle_grid& grid) {
  return make_samples(grid, raw_magnitude_separable(pv, g, grid), null_magnitude(g));
}

pattern_samples array_factor_bruteforce(const phase_matrix& phases, const array_geometry& g, const angle_grid& grid) {
  return make_samples(grid, raw_magnitude_bruteforce(phases, g, grid), null_magnitude(g));
}

double wrap_phase(double radians) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians + std::numbers::pi, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  r -= std::numbers::pi;
  return r >= std::numbers::pi ? -std::numbers::pi : r;
}

}  // namespace phasesynth
