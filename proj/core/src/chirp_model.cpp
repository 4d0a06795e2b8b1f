#include "chirplet/chirp_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chirplet/errors.hpp"
#include "chirplet/numerics.hpp"

namespace chirplet {

namespace {

constexpr double kPi = std::numbers::pi;

// Collects the 5-point stencil of the phase around omega_c; throws when any
// stencil sample is invalid or the location is too close to the grid ends.
struct PhaseStencil {
  double y[5];
  double h;
  double x;  // offset of omega_c from the stencil center
};

PhaseStencil phase_stencil(std::span<const double> phase, double omega_max,
                           double omega_c) {
  const std::size_t m = phase.size();
  if (m < 5 || m % 2 == 0) throw std::invalid_argument("phase_taylor: bad phase grid");
  const std::size_t n = (m - 1) / 2;
  const double h = omega_max / static_cast<double>(n);

  const double idx_real = omega_c / h + static_cast<double>(n);
  long center = std::lround(idx_real);
  const long last = static_cast<long>(m) - 1;
  if (idx_real < 1.5 || idx_real > static_cast<double>(last) - 1.5)
    throw std::invalid_argument("phase_taylor: omega_c too close to the grid boundary");
  center = std::clamp(center, 2L, last - 2);

  PhaseStencil st;
  st.h = h;
  st.x = omega_c - (static_cast<double>(center) - static_cast<double>(n)) * h;
  for (int k = -2; k <= 2; ++k) {
    const double v = phase[static_cast<std::size_t>(center + k)];
    if (!std::isfinite(v))
      throw degenerate_input_error("phase_taylor: phase invalid near omega = " +
                                   std::to_string(omega_c));
    st.y[k + 2] = v;
  }
  return st;
}

}  // namespace

PhaseQuadratic phase_taylor(std::span<const double> phase, double omega_max,
                            double omega_c) {
  const PhaseStencil st = phase_stencil(phase, omega_max, omega_c);
  PhaseQuadratic q;
  q.gamma = quartic_value(st.y, st.h, st.x);
  q.t = quartic_first_derivative(st.y, st.h, st.x);
  q.kappa = quartic_second_derivative(st.y, st.h, st.x);
  return q;
}

double phase_offset(double kappa, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("phase_offset: sigma must be positive");
  return 0.5 * std::atan(kappa * sigma);
}

RealSignal synthesize_chirps(const ChirpletModel& model, const TimeGrid& grid) {
  RealSignal out;
  out.t_start = grid.t_start;
  out.dt = grid.dt;
  out.samples.assign(grid.n, 0.0);

  if (model.center) {
    const CenterChirp& c = *model.center;
    const double coeff = c.alpha0 * std::sqrt(2.0 * c.sigma0 / kPi);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double u = grid.time_at(i) - c.t0;
      out.samples[i] += coeff * std::exp(-c.sigma0 * u * u / 2.0);
    }
  }

  const double pair_scale = std::pow(2.0, 1.5) / std::sqrt(kPi);
  for (const ChirpAtom& a : model.atoms) {
    const double ks = a.kappa * a.sigma;
    const double stretch = 1.0 + ks * ks;
    const double coeff = pair_scale * a.alpha * std::sqrt(a.sigma) / std::pow(stretch, 0.25);
    const double phi = phase_offset(a.kappa, a.sigma);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double t = grid.time_at(i);
      const double u = t - a.t_c;
      const double envelope = std::exp(-a.sigma * u * u / (2.0 * stretch));
      const double arg =
          a.kappa * a.sigma * a.sigma * u * u / (2.0 * stretch) + a.omega_c * t - a.gamma - phi;
      out.samples[i] += coeff * envelope * std::cos(arg);
    }
  }
  return out;
}

std::complex<double> model_spectrum_at(const ChirpletModel& model, double omega) {
  std::complex<double> acc{0.0, 0.0};
  if (model.center) {
    const CenterChirp& c = *model.center;
    const double mag = c.alpha0 * std::exp(-omega * omega / (2.0 * c.sigma0));
    acc += std::polar(mag, -c.t0 * omega);
  }
  for (const ChirpAtom& a : model.atoms) {
    const double um = omega - a.omega_c;
    const double up = omega + a.omega_c;
    const double mag_m = a.alpha * std::exp(-um * um / (2.0 * a.sigma));
    const double mag_p = a.alpha * std::exp(-up * up / (2.0 * a.sigma));
    acc += std::polar(mag_m, -(a.gamma + a.t_c * um + 0.5 * a.kappa * um * um));
    acc += std::polar(mag_p, a.gamma - a.t_c * up + 0.5 * a.kappa * up * up);
  }
  return acc;
}

std::vector<std::complex<double>> model_spectrum(const ChirpletModel& model,
                                                 std::span<const double> omegas) {
  std::vector<std::complex<double>> out(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) out[i] = model_spectrum_at(model, omegas[i]);
  return out;
}

namespace {

ChirpletModel build_nonnegative(std::optional<GaussianAtom> center,
                                const std::vector<GaussianAtom>& pairs,
                                std::span<const double> phase, double omega_max) {
  ChirpletModel model;
  if (center && center->alpha != 0.0) {
    // psi is odd, so gamma0 = psi(0) = 0 and kappa0 = psi''(0) = 0; only the
    // group delay psi'(0) is taken from the data.
    const PhaseQuadratic q = phase_taylor(phase, omega_max, 0.0);
    model.center = CenterChirp{center->alpha, center->sigma, q.t};
  }
  for (const GaussianAtom& g : pairs) {
    const PhaseQuadratic q = phase_taylor(phase, omega_max, g.omega_c);
    model.atoms.push_back({g.alpha, g.omega_c, g.sigma, q.gamma, q.t, q.kappa});
  }
  std::sort(model.atoms.begin(), model.atoms.end(),
            [](const ChirpAtom& a, const ChirpAtom& b) { return a.omega_c < b.omega_c; });
  return model;
}

}  // namespace

ChirpletModel build_model(const SignedMixture& mixture,
                          std::span<const double> phase, double omega_max) {
  if (!mixture.negative.empty())
    throw std::invalid_argument("build_model: mixture must be nonnegative (level-0 fit)");
  if (mixture.center && mixture.center->alpha < 0.0)
    throw std::invalid_argument("build_model: negative center weight");
  return build_nonnegative(mixture.center, mixture.positive, phase, omega_max);
}

SignedChirpletModels build_model_signed(const SignedMixture& mixture,
                                        std::span<const double> phase,
                                        double omega_max) {
  SignedChirpletModels out;
  std::optional<GaussianAtom> pos_center, neg_center;
  if (mixture.center) {
    if (mixture.center->alpha >= 0.0) {
      pos_center = mixture.center;
    } else {
      neg_center = mixture.center;
      neg_center->alpha = -neg_center->alpha;
    }
  }
  out.added = build_nonnegative(pos_center, mixture.positive, phase, omega_max);
  out.subtracted = build_nonnegative(neg_center, mixture.negative, phase, omega_max);
  return out;
}

}  // namespace chirplet
