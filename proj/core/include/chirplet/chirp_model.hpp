#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "chirplet/gaussian_mixture.hpp"
#include "chirplet/spectrum.hpp"

namespace chirplet {

// One real Gaussian chirp: amplitude pair (alpha, omega_c, sigma) plus the
// local quadratic phase data (gamma, t_c, kappa) = (psi, psi', psi'') at
// omega_c. t_c is the group delay, kappa the chirp rate.
struct ChirpAtom {
  double alpha = 1.0;
  double omega_c = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;
  double t_c = 0.0;
  double kappa = 0.0;
};

// The zero-frequency term. Phase oddness forces gamma = kappa = 0 for it, so
// only the group delay t0 survives.
struct CenterChirp {
  double alpha0 = 1.0;
  double sigma0 = 1.0;
  double t0 = 0.0;
};

struct ChirpletModel {
  std::optional<CenterChirp> center;
  std::vector<ChirpAtom> atoms;  // ordered by omega_c

  std::size_t parameter_count() const { return 6 * atoms.size() + 3; }
};

struct PhaseQuadratic {
  double gamma = 0.0;
  double t = 0.0;
  double kappa = 0.0;
};

// Local quadratic Taylor data of the unwrapped phase at omega_c, from the
// degree-4 interpolant through the five nearest grid samples (exact for
// polynomial phases up to degree 4). `phase` lives on the full symmetric
// grid and is NaN where invalid; all five stencil points must be valid.
PhaseQuadratic phase_taylor(std::span<const double> phase, double omega_max,
                            double omega_c);

// Half-angle phi with cos 2phi = 1/sqrt(1+k^2 s^2), sin 2phi = ks/sqrt(...),
// phi in (-pi/4, pi/4).
double phase_offset(double kappa, double sigma);

// Time-domain synthesis. With the project convention
// f(t) = (1/pi) Int e^{jwt} H(w) dw this reads
//   f(t) = sqrt(2 s0 / pi) a0 exp(-s0 (t-t0)^2 / 2)
//        + (2^{3/2}/sqrt(pi)) Sum_k a_k sqrt(s_k) (1+k^2 s^2)^{-1/4}
//            * exp(-s (t-t_k)^2 / (2 (1+k^2 s^2)))
//            * cos(k s^2 (t-t_k)^2 / (2 (1+k^2 s^2)) + w_k t - g_k - phi_k),
// the exact inverse transform of model_spectrum below.
RealSignal synthesize_chirps(const ChirpletModel& model, const TimeGrid& grid);

// Spectrum of the model: center term a0 exp(-w^2/2s0 - j t0 w) plus, per
// atom, the two conjugate-symmetric complex Gaussian chirps
//   a_k exp(-(w -+ w_k)^2/2s_k -+ j(g_k + t_k (w -+ w_k) + k_k/2 (w -+ w_k)^2)).
std::vector<std::complex<double>> model_spectrum(const ChirpletModel& model,
                                                 std::span<const double> omegas);
std::complex<double> model_spectrum_at(const ChirpletModel& model, double omega);

// Attaches phase data to a nonnegative (level-0 style) mixture: pair atoms
// get phase_taylor at their centers, the center atom gets t0 = psi'(0) with
// gamma0 = kappa0 = 0 forced by oddness. Throws std::invalid_argument when
// the mixture has negative atoms and degenerate_input_error (naming the
// atom) when the phase is invalid at an atom center.
ChirpletModel build_model(const SignedMixture& mixture,
                          std::span<const double> phase, double omega_max);

// Signed-mixture variant for hierarchy levels: the negative atom list is
// fitted as its own nonnegative model to be subtracted by the caller.
struct SignedChirpletModels {
  ChirpletModel added;
  ChirpletModel subtracted;
};
SignedChirpletModels build_model_signed(const SignedMixture& mixture,
                                        std::span<const double> phase,
                                        double omega_max);

}  // namespace chirplet
