#pragma once

#include <complex>
#include <span>
#include <vector>

namespace chirplet {

// Uniformly sampled real signal.
struct RealSignal {
  std::vector<double> samples;
  double t_start = 0.0;
  double dt = 1.0;

  double time_at(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
  std::size_t size() const { return samples.size(); }
};

struct TimeGrid {
  double t_start = 0.0;
  double dt = 1.0;
  std::size_t n = 0;

  double time_at(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
};

// Real even function sampled on the symmetric frequency grid
// omega_p = p * omega_max / n_half, p = -n_half .. n_half.
// This is the working representation for amplitudes and residuals.
struct SampledAmplitude {
  double omega_max = 0.0;
  std::vector<double> values;  // size 2*n_half + 1

  std::size_t n_half() const { return (values.size() - 1) / 2; }
  double step() const { return omega_max / static_cast<double>(n_half()); }
  double omega_at(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(n_half())) * step();
  }
  // Half-grid view starting at omega = 0.
  std::span<const double> half() const {
    return std::span<const double>(values).subspan(n_half());
  }
};

// Spectrum of a real band-limited signal on the same symmetric grid.
//
// Convention used throughout the project:
//   f(t) = (1/pi) * Integral_{-Omega}^{Omega} e^{j w t} H(w) dw,
//   H(w) = H_e(w) - j H_o(w),
// so the forward transform reads H_e(w) = (1/2) Int f(t) cos(w t) dt and
// H_o(w) = (1/2) Int f(t) sin(w t) dt. Amplitude and phase are the polar
// form H = A e^{-j psi} with psi odd and psi(0) = 0. Phase entries are NaN
// where the amplitude sits below the validity floor.
struct SampledSpectrum {
  double omega_max = 0.0;
  std::size_t n_half = 0;
  std::vector<double> h_even;     // size 2*n_half + 1, even in p
  std::vector<double> h_odd;      // odd in p
  std::vector<double> amplitude;  // sqrt(h_even^2 + h_odd^2)
  std::vector<double> phase;      // unwrapped, NaN below floor
  double phase_floor = 0.0;       // absolute floor used for phase validity
  bool boundary_warning = false;  // amplitude at +-Omega above 1e-3 * max A

  std::size_t size() const { return 2 * n_half + 1; }
  double step() const { return omega_max / static_cast<double>(n_half); }
  double omega_at(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(n_half)) * step();
  }
  SampledAmplitude amplitude_samples() const { return {omega_max, amplitude}; }
};

// Relative floor below which the polar phase is considered meaningless.
inline constexpr double kDefaultPhaseFloorRel = 1e-6;
// Band-limit check: amplitude at +-Omega should stay below this times max A.
inline constexpr double kBoundaryAmplitudeRel = 1e-3;

// Builds a spectrum from given even/odd parts (mirrors and symmetrizes are
// not applied: inputs must already satisfy the parity invariants). Derives
// amplitude, unwrapped phase, and the boundary warning.
SampledSpectrum spectrum_from_parts(double omega_max,
                                    std::vector<double> h_even,
                                    std::vector<double> h_odd,
                                    double phase_floor_rel = kDefaultPhaseFloorRel);

// Forward transform by composite trapezoid over the signal's support.
// Parity of the output is exact by construction (only p >= 0 is integrated,
// negative p mirrored).
SampledSpectrum compute_spectrum(const RealSignal& signal, double omega_max,
                                 std::size_t n_freq,
                                 double phase_floor_rel = kDefaultPhaseFloorRel);

// Unwraps the polar phase of (h_even, h_odd). Entries where
// amplitude <= floor are NaN. The nonnegative half is unwrapped by adjacent
// 2*pi correction (gaps restart at the principal value) and the negative
// half is the odd mirror.
std::vector<double> unwrap_phase(std::span<const double> h_even,
                                 std::span<const double> h_odd,
                                 std::span<const double> amplitude,
                                 double floor);

// Trapezoidal synthesis on the standard frequency lattice:
//   f_N(t) = (Omega / (N pi)) Sum_k w_k e^{j w_k t} H(w_k)
// with half weights at k = +-N. Exact partner of lattice_coefficients.
RealSignal synthesize_standard(const SampledSpectrum& spec, const TimeGrid& grid);

// Recovers H at the lattice frequencies p*Omega/N from the 2N time samples
// f_N(n pi / Omega), n = -N .. N-1:
//   H(p Omega / N) = (pi / (2 Omega)) Sum_n e^{-j p n pi / N} f_n.
// Returns 2N+1 values, p = -N .. N.
std::vector<std::complex<double>> lattice_coefficients(
    std::span<const double> samples_at_lattice, double omega_max);

// Alternating-sign sum of the lattice samples, sum of (-1)^n f_n. Vanishes
// for band-limited input; callers judge smallness relative to sum |f_n|.
double lattice_alternating_sum(std::span<const double> samples_at_lattice);

// Relative L2 distance between the spectrum and a model spectrum over the
// grid. Throws degenerate_input_error when the original has zero norm.
double roundtrip_error(const SampledSpectrum& spec,
                       std::span<const std::complex<double>> model_spectrum);

}  // namespace chirplet
