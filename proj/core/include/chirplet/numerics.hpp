#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace chirplet {

// Composite trapezoid over uniformly spaced samples.
double trapezoid(std::span<const double> values, double dx);

// Second derivative of the degree-4 interpolant through five uniformly
// spaced samples, evaluated at `x` (grid coordinates, x = 0 at the center
// sample, spacing h). At x = 0 this reduces to the classical 5-point central
// stencil (-1, 16, -30, 16, -1) / (12 h^2).
double quartic_second_derivative(const double y[5], double h, double x);

// Value and first derivative of the same interpolant.
double quartic_value(const double y[5], double h, double x);
double quartic_first_derivative(const double y[5], double h, double x);

// Deterministic standard-normal stream. mt19937_64 is fully specified by the
// standard and Box-Muller is done by hand, so a seed maps to the same sample
// sequence on every platform (std::normal_distribution does not promise that).
class GaussianNoise {
public:
  explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}
  double next();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;

  double next_uniform();  // in (0, 1]
};

}  // namespace chirplet
