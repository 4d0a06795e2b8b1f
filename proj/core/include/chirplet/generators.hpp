#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "chirplet/spectrum.hpp"

namespace chirplet {

// Built-in experiment signals, defined through their spectra.

// Polynomial two-hump amplitude (4 - w^2)^2 (1/2 + w^2) on [-2, 2], zero
// outside. Maxima at +-1 with value 13.5 and second derivative -36; the
// origin is a local minimum.
double academic_amplitude(double omega);
double academic_amplitude_d2(double omega);

// Difference-of-exponentials amplitude with two bumps,
// (exp(-a |w|^3) - exp(-b |w|^3)) / (b - a), a = 0.8, b = 1.3.
double two_bump_amplitude(double omega);

// Phase models paired with the two-bump amplitude.
double cubic_phase(double omega);       // w^3 / 50
double sinusoidal_phase(double omega);  // pi (1 - exp(-w^2)) sin(2w)

enum class GeneratorKind { academic, two_bump_cubic, two_bump_sin };

// Maps the CLI generator names (academic, lolo-cubic, lolo-sin).
std::optional<GeneratorKind> generator_from_name(std::string_view name);

struct GeneratorOptions {
  TimeGrid grid;
  double omega_band = 0.0;   // quadrature band of the synthesis
  std::size_t n_quad = 0;    // frequency quadrature points on [0, band]
  double noise_sigma = 0.0;  // additive white noise, relative to signal RMS
  std::uint64_t seed = 0;
};

// Per-generator defaults. The two-bump generators use the 512-point grid
// t_n = -5.12 + 0.02 n; the academic signal gets a long, densely sampled
// window so its slowly decaying tails are captured.
GeneratorOptions default_generator_options(GeneratorKind kind);

// Synthesizes f(t) = (2/pi) Int_0^band A(w) cos(w t - psi(w)) dw by
// trapezoid quadrature, then adds white noise when requested. Deterministic
// for a fixed seed.
RealSignal generate_signal(GeneratorKind kind, const GeneratorOptions& options);

// Samples an (amplitude, phase) pair onto the symmetric grid. Used to build
// synthetic spectra without a time-domain detour.
SampledSpectrum sample_spectrum(const std::function<double(double)>& amplitude,
                                const std::function<double(double)>& phase,
                                double omega_max, std::size_t n_half);

}  // namespace chirplet
