#include "chirplet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chirplet/errors.hpp"
#include "chirplet/numerics.hpp"

namespace chirplet {

namespace {

constexpr double kPi = std::numbers::pi;

void require_valid_parts(double omega_max, const std::vector<double>& h_even,
                         const std::vector<double>& h_odd) {
  if (!(omega_max > 0.0)) throw std::domain_error("spectrum: omega_max must be positive");
  if (h_even.size() != h_odd.size() || h_even.size() < 5 || h_even.size() % 2 == 0)
    throw std::invalid_argument("spectrum: parts must share an odd size >= 5");
  for (std::size_t i = 0; i < h_even.size(); ++i) {
    if (!std::isfinite(h_even[i]) || !std::isfinite(h_odd[i]))
      throw std::invalid_argument("spectrum: non-finite entry");
  }
}

}  // namespace

SampledSpectrum spectrum_from_parts(double omega_max, std::vector<double> h_even,
                                    std::vector<double> h_odd,
                                    double phase_floor_rel) {
  require_valid_parts(omega_max, h_even, h_odd);

  SampledSpectrum spec;
  spec.omega_max = omega_max;
  spec.n_half = (h_even.size() - 1) / 2;
  spec.h_even = std::move(h_even);
  spec.h_odd = std::move(h_odd);

  const std::size_t m = spec.size();
  spec.amplitude.resize(m);
  double max_amp = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    spec.amplitude[i] = std::hypot(spec.h_even[i], spec.h_odd[i]);
    max_amp = std::max(max_amp, spec.amplitude[i]);
  }

  if (max_amp == 0.0) {
    // degenerate spectrum: representable, but the phase is meaningless
    spec.phase_floor = 0.0;
    spec.phase.assign(m, std::numeric_limits<double>::quiet_NaN());
    return spec;
  }
  spec.phase_floor = phase_floor_rel * max_amp;
  spec.phase = unwrap_phase(spec.h_even, spec.h_odd, spec.amplitude, spec.phase_floor);
  spec.boundary_warning =
      std::max(spec.amplitude.front(), spec.amplitude.back()) >= kBoundaryAmplitudeRel * max_amp;
  return spec;
}

SampledSpectrum compute_spectrum(const RealSignal& signal, double omega_max,
                                 std::size_t n_freq, double phase_floor_rel) {
  if (!(omega_max > 0.0)) throw std::domain_error("compute_spectrum: omega_max must be positive");
  if (n_freq < 2) throw std::invalid_argument("compute_spectrum: n_freq must be >= 2");
  if (signal.samples.size() < 4) throw std::invalid_argument("compute_spectrum: signal too short");
  if (!(signal.dt > 0.0)) throw std::invalid_argument("compute_spectrum: dt must be positive");
  for (double v : signal.samples)
    if (!std::isfinite(v)) throw std::invalid_argument("compute_spectrum: non-finite sample");

  const std::size_t n = n_freq;
  const std::size_t m = 2 * n + 1;
  const double domega = omega_max / static_cast<double>(n);
  std::vector<double> h_even(m, 0.0), h_odd(m, 0.0);

  // H_e(w) = (1/2) Int f(t) cos(wt) dt picks the even part of f, H_o the odd
  // part; integrating the full signal keeps the parity invariants exact.
  const std::size_t ns = signal.samples.size();
  std::vector<double> ce(ns), so(ns);
  for (std::size_t p = 0; p <= n; ++p) {
    const double w = domega * static_cast<double>(p);
    for (std::size_t i = 0; i < ns; ++i) {
      const double t = signal.time_at(i);
      ce[i] = signal.samples[i] * std::cos(w * t);
      so[i] = signal.samples[i] * std::sin(w * t);
    }
    const double he = 0.5 * trapezoid(ce, signal.dt);
    const double ho = 0.5 * trapezoid(so, signal.dt);
    h_even[n + p] = he;
    h_even[n - p] = he;
    h_odd[n + p] = ho;
    h_odd[n - p] = -ho;
  }
  h_odd[n] = 0.0;

  return spectrum_from_parts(omega_max, std::move(h_even), std::move(h_odd), phase_floor_rel);
}

std::vector<double> unwrap_phase(std::span<const double> h_even,
                                 std::span<const double> h_odd,
                                 std::span<const double> amplitude, double floor) {
  const std::size_t m = h_even.size();
  if (h_odd.size() != m || amplitude.size() != m)
    throw std::invalid_argument("unwrap_phase: size mismatch");
  if (!(floor > 0.0)) throw std::invalid_argument("unwrap_phase: floor must be positive");
  if (m % 2 == 0) throw std::invalid_argument("unwrap_phase: even grid size");

  const std::size_t n = (m - 1) / 2;
  bool any_valid = false;
  for (std::size_t i = 0; i < m; ++i)
    if (amplitude[i] > floor) any_valid = true;
  if (!any_valid)
    throw degenerate_input_error("unwrap_phase: amplitude everywhere below floor");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> psi(m, nan);

  // Unwrap the nonnegative half; invalid gaps restart at the principal value.
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t i = n + p;
    if (!(amplitude[i] > floor)) {
      have_prev = false;
      continue;
    }
    double raw = std::atan2(h_odd[i], h_even[i]);
    if (have_prev) {
      const double k = std::round((prev - raw) / (2.0 * kPi));
      raw += 2.0 * kPi * k;
    }
    psi[i] = raw;
    prev = raw;
    have_prev = true;
  }

  // Negative half by odd symmetry (psi(0) = 0 whenever H_e(0) > 0).
  for (std::size_t p = 1; p <= n; ++p)
    psi[n - p] = std::isnan(psi[n + p]) ? nan : -psi[n + p];

  return psi;
}

RealSignal synthesize_standard(const SampledSpectrum& spec, const TimeGrid& grid) {
  const std::size_t n = spec.n_half;
  const double domega = spec.step();
  const double scale = spec.omega_max / (static_cast<double>(n) * kPi);

  RealSignal out;
  out.t_start = grid.t_start;
  out.dt = grid.dt;
  out.samples.resize(grid.n);

  for (std::size_t i = 0; i < grid.n; ++i) {
    const double t = grid.time_at(i);
    // k = 0 term plus the conjugate pairs; k = +-N enter with half weight,
    // which merges into one full term at +N.
    double acc = spec.h_even[n];
    for (std::size_t k = 1; k < n; ++k) {
      const double w = domega * static_cast<double>(k);
      acc += 2.0 * (spec.h_even[n + k] * std::cos(w * t) + spec.h_odd[n + k] * std::sin(w * t));
    }
    acc += spec.h_even[2 * n] * std::cos(spec.omega_max * t) +
           spec.h_odd[2 * n] * std::sin(spec.omega_max * t);
    out.samples[i] = scale * acc;
  }
  return out;
}

std::vector<std::complex<double>> lattice_coefficients(
    std::span<const double> samples_at_lattice, double omega_max) {
  if (!(omega_max > 0.0))
    throw std::domain_error("lattice_coefficients: omega_max must be positive");
  const std::size_t two_n = samples_at_lattice.size();
  if (two_n < 4 || two_n % 2 != 0)
    throw std::invalid_argument("lattice_coefficients: expected exactly 2N samples");
  const std::size_t n = two_n / 2;

  const double scale = kPi / (2.0 * omega_max);
  std::vector<std::complex<double>> h(2 * n + 1);
  for (std::size_t ip = 0; ip <= 2 * n; ++ip) {
    const double p = static_cast<double>(ip) - static_cast<double>(n);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t in = 0; in < two_n; ++in) {
      const double nn = static_cast<double>(in) - static_cast<double>(n);
      const double arg = -p * nn * kPi / static_cast<double>(n);
      acc += samples_at_lattice[in] * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    h[ip] = scale * acc;
  }
  return h;
}

double lattice_alternating_sum(std::span<const double> samples_at_lattice) {
  const std::size_t two_n = samples_at_lattice.size();
  if (two_n < 4 || two_n % 2 != 0)
    throw std::invalid_argument("lattice_alternating_sum: expected exactly 2N samples");
  const std::size_t n = two_n / 2;
  double acc = 0.0;
  for (std::size_t in = 0; in < two_n; ++in) {
    const long long nn = static_cast<long long>(in) - static_cast<long long>(n);
    acc += (nn % 2 == 0 ? 1.0 : -1.0) * samples_at_lattice[in];
  }
  return acc;
}

double roundtrip_error(const SampledSpectrum& spec,
                       std::span<const std::complex<double>> model_spectrum) {
  if (model_spectrum.size() != spec.size())
    throw std::invalid_argument("roundtrip_error: grid mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const std::complex<double> h(spec.h_even[i], -spec.h_odd[i]);
    num += std::norm(h - model_spectrum[i]);
    den += std::norm(h);
  }
  if (den == 0.0) throw degenerate_input_error("roundtrip_error: zero-norm spectrum");
  return std::sqrt(num / den);
}

}  // namespace chirplet
