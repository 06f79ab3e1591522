// SPDX-License-Identifier: Apache-2.0
//
// Far-field pattern of a rectangular planar array under phase-only control.
//
// Elements sit on a regular lattice in the x-y plane, symmetric about the
// origin: along x at +/-(2i-1)*dx/2 for i = 1..M/2, along y likewise. Phases
// are antisymmetric about the origin, so an array is fully described by the
// half-vectors of x- and y-phases; element (m, n) carries psi_x[m] + psi_y[n].

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace phasesynth {

inline constexpr double speed_of_light = 299792458.0;
inline constexpr double pattern_floor_db = -120.0;

struct isotropic_element {};

/// Cavity-model rectangular patch. `length_m` is the resonant dimension and
/// lies along x; `width_m` lies along y.
struct rectangular_patch {
  double width_m = 0.00906;
  double length_m = 0.01186;
};

using element_model = std::variant<isotropic_element, rectangular_patch>;

struct array_geometry {
  int m_elems = 16;  ///< element count along x
  int n_elems = 8;   ///< element count along y
  double dx = 0.5;   ///< x spacing in wavelengths
  double dy = 0.5;   ///< y spacing in wavelengths
  double frequency_hz = 1.0e10;
  element_model element = isotropic_element{};

  double wavelength_m() const { return speed_of_light / frequency_hz; }
  double wavenumber() const;  ///< k0 in rad/m

  /// Throws contract_violation unless counts are even and >= 2 and spacings
  /// and frequency are positive.
  void validate() const;
};

/// Optimization variable: the independent half of the antisymmetric phases.
struct phase_vector {
  std::vector<double> x_half;  ///< M/2 phases in radians, innermost first
  std::vector<double> y_half;  ///< N/2 phases in radians, innermost first

  /// Checks sizes against the geometry and that every phase lies in [-pi, pi).
  void validate(const array_geometry& g) const;
};

/// Dense M x N matrix of per-element phases, row-major in m.
class phase_matrix {
 public:
  phase_matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int m, int n) { return data_[static_cast<std::size_t>(m * cols_ + n)]; }
  double operator()(int m, int n) const { return data_[static_cast<std::size_t>(m * cols_ + n)]; }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

/// Contiguous run of sample indices [first, first + count).
struct index_span {
  std::size_t first = 0;
  std::size_t count = 0;

  bool contains(std::size_t i) const { return i >= first && i < first + count; }
  std::size_t last() const { return first + count - 1; }
};

struct angle_grid {
  std::vector<double> theta_deg;
  double phi_deg = 0.0;
  /// Beam-region partition, when the grid was built from a mask.
  std::optional<index_span> beam;

  void validate() const;
};

/// Normalized pattern samples in dB: maximum exactly 0 dB, except for a
/// null pattern, which sits at pattern_floor_db everywhere.
struct pattern_samples {
  std::vector<double> angles_deg;
  std::vector<double> values_db;
  std::optional<index_span> beam;
};

/// Element coordinates along one axis, in wavelengths, ordered from the most
/// negative position: -(count-1)/2*d, ..., +(count-1)/2*d.
std::vector<double> element_positions(int count, double spacing);

/// Full per-axis phases in the same order as element_positions: the mirrored
/// (negative-position) half carries the negated phases.
std::vector<double> expand_axis(std::span<const double> half);

/// Per-element phase matrix with psi(m, n) = psi_x(m) + psi_y(n).
phase_matrix expand_symmetric(const phase_vector& pv, const array_geometry& g);

/// Element gain factor, 1 at broadside. Angles in degrees.
double element_pattern(double theta_deg, double phi_deg, const array_geometry& g);

/// Pattern via the product of the two linear-array sums.
pattern_samples array_factor_separable(const phase_vector& pv, const array_geometry& g, const angle_grid& grid);

/// Pattern via the direct double sum over all elements; accepts any phase
/// matrix, separable or not.
pattern_samples array_factor_bruteforce(const phase_matrix& phases, const array_geometry& g, const angle_grid& grid);

/// Linear magnitudes before normalization, useful for tests and diagnostics.
std::vector<double> raw_magnitude_separable(const phase_vector& pv, const array_geometry& g, const angle_grid& grid);
std::vector<double> raw_magnitude_bruteforce(const phase_matrix& phases, const array_geometry& g, const angle_grid& grid);

/// Normalizes magnitudes to their maximum and converts to floored dB. A
/// pattern whose peak does not exceed `null_threshold` radiates nothing on
/// this cut and is reported at the floor everywhere.
std::vector<double> to_normalized_db(std::span<const double> magnitude, double null_threshold = 0.0);

/// Peak magnitude below which an array's cut counts as a null pattern:
/// 1e-12 of the coherent sum M*N.
double null_magnitude(const array_geometry& g);

/// Wraps an angle into [-pi, pi).
double wrap_phase(double radians);

}  // namespace phasesynth
