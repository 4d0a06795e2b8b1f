#include "chirplet/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chirplet/numerics.hpp"

namespace chirplet {

namespace {
constexpr double kPi = std::numbers::pi;
}

double academic_amplitude(double omega) {
  if (std::abs(omega) >= 2.0) return 0.0;
  const double q = 4.0 - omega * omega;
  return q * q * (0.5 + omega * omega);
}

double academic_amplitude_d2(double omega) {
  if (std::abs(omega) >= 2.0) return 0.0;
  // A = 8 + 12 w^2 - 7.5 w^4 + w^6 on the support
  const double w2 = omega * omega;
  return 24.0 - 90.0 * w2 + 30.0 * w2 * w2;
}

double two_bump_amplitude(double omega) {
  constexpr double a = 0.8;
  constexpr double b = 1.3;
  const double c = std::abs(omega);
  const double cubed = c * c * c;
  return (std::exp(-a * cubed) - std::exp(-b * cubed)) / (b - a);
}

double cubic_phase(double omega) { return omega * omega * omega / 50.0; }

double sinusoidal_phase(double omega) {
  return kPi * (1.0 - std::exp(-omega * omega)) * std::sin(2.0 * omega);
}

std::optional<GeneratorKind> generator_from_name(std::string_view name) {
  if (name == "academic") return GeneratorKind::academic;
  if (name == "lolo-cubic") return GeneratorKind::two_bump_cubic;
  if (name == "lolo-sin") return GeneratorKind::two_bump_sin;
  return std::nullopt;
}

GeneratorOptions default_generator_options(GeneratorKind kind) {
  GeneratorOptions opts;
  if (kind == GeneratorKind::academic) {
    opts.grid = {-100.0, 0.05, 4001};
    opts.omega_band = 2.0;
    opts.n_quad = 4096;
  } else {
    // 512 samples, t_n = -5.12 + 0.02 n
    opts.grid = {-5.12, 0.02, 512};
    opts.omega_band = 4.0;
    opts.n_quad = 2048;
  }
  return opts;
}

RealSignal generate_signal(GeneratorKind kind, const GeneratorOptions& options) {
  if (options.grid.n < 2) throw std::invalid_argument("generate_signal: empty time grid");
  if (!(options.omega_band > 0.0) || options.n_quad < 8)
    throw std::invalid_argument("generate_signal: bad quadrature settings");
  if (options.noise_sigma < 0.0)
    throw std::invalid_argument("generate_signal: noise_sigma must be >= 0");

  const bool cubic = kind == GeneratorKind::two_bump_cubic;
  auto amplitude = [&](double w) {
    return kind == GeneratorKind::academic ? academic_amplitude(w) : two_bump_amplitude(w);
  };
  auto phase = [&](double w) -> double {
    if (kind == GeneratorKind::academic) return 0.0;
    return cubic ? cubic_phase(w) : sinusoidal_phase(w);
  };

  const std::size_t nq = options.n_quad;
  const double dw = options.omega_band / static_cast<double>(nq);
  std::vector<double> amp(nq + 1), psi(nq + 1);
  for (std::size_t k = 0; k <= nq; ++k) {
    const double w = dw * static_cast<double>(k);
    amp[k] = amplitude(w);
    psi[k] = phase(w);
  }

  RealSignal out;
  out.t_start = options.grid.t_start;
  out.dt = options.grid.dt;
  out.samples.resize(options.grid.n);
  std::vector<double> integrand(nq + 1);
  for (std::size_t i = 0; i < options.grid.n; ++i) {
    const double t = options.grid.time_at(i);
    for (std::size_t k = 0; k <= nq; ++k) {
      const double w = dw * static_cast<double>(k);
      integrand[k] = amp[k] * std::cos(w * t - psi[k]);
    }
    out.samples[i] = (2.0 / kPi) * trapezoid(integrand, dw);
  }

  if (options.noise_sigma > 0.0) {
    double rms = 0.0;
    for (double v : out.samples) rms += v * v;
    rms = std::sqrt(rms / static_cast<double>(out.samples.size()));
    GaussianNoise noise(options.seed);
    const double scale = options.noise_sigma * rms;
    for (double& v : out.samples) v += scale * noise.next();
  }
  return out;
}

SampledSpectrum sample_spectrum(const std::function<double(double)>& amplitude,
                                const std::function<double(double)>& phase,
                                double omega_max, std::size_t n_half) {
  if (n_half < 2) throw std::invalid_argument("sample_spectrum: n_half too small");
  const std::size_t m = 2 * n_half + 1;
  const double h = omega_max / static_cast<double>(n_half);
  std::vector<double> h_even(m), h_odd(m);
  for (std::size_t p = 0; p <= n_half; ++p) {
    const double w = h * static_cast<double>(p);
    const double a = amplitude(w);
    const double ps = phase(w);
    const double he = a * std::cos(ps);
    const double ho = a * std::sin(ps);
    h_even[n_half + p] = he;
    h_even[n_half - p] = he;
    h_odd[n_half + p] = ho;
    h_odd[n_half - p] = -ho;
  }
  h_odd[n_half] = 0.0;
  return spectrum_from_parts(omega_max, std::move(h_even), std::move(h_odd));
}

}  // namespace chirplet
