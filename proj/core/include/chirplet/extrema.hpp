#pragma once

#include <span>
#include <vector>

namespace chirplet {

enum class ExtremumKind { maximum, minimum };

// A refined interior extremum of a function sampled on [0, Omega].
struct ExtremumPoint {
  double location = 0.0;      // >= 0
  double value = 0.0;
  double second_deriv = 0.0;  // < 0 for maxima, > 0 for minima
  ExtremumKind kind = ExtremumKind::maximum;
};

struct ExtremaResult {
  std::vector<ExtremumPoint> interior;  // ordered by location
  ExtremumKind origin = ExtremumKind::minimum;
  double origin_value = 0.0;
  double origin_second_deriv = 0.0;  // even extension, 5-point stencil
};

inline constexpr double kDefaultProminenceRel = 1e-3;

// Locates interior extrema of an even function given on the half grid
// w_p = p * Omega / N, p = 0..N (values[0] is w = 0). Detection is by sign
// change of the discrete slope, location/value are refined by the local
// 3-point parabola, the second derivative comes from the 5-point stencil.
// Extrema with topographic prominence below min_prominence, and extrema
// whose stencil second derivative disagrees with their kind, are dropped.
// The origin is classified by its one-sided slope. Throws
// degenerate_input_error for constant input.
ExtremaResult find_extrema(std::span<const double> half_values, double omega_max,
                           double min_prominence);

// 5-point finite-difference second derivative at a grid index (exact
// stencil) or at an off-grid location (degree-4 interpolant around the
// nearest admissible center). The location is in [0, Omega] coordinates of
// the half grid and must sit at least two steps from both ends.
double second_derivative(std::span<const double> half_values, double omega_max,
                         std::size_t index);
double second_derivative(std::span<const double> half_values, double omega_max,
                         double location);

}  // namespace chirplet
