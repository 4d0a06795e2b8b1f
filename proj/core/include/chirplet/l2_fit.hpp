#pragma once

#include <span>
#include <vector>

#include "chirplet/gaussian_mixture.hpp"
#include "chirplet/linalg.hpp"
#include "chirplet/spectrum.hpp"

namespace chirplet {

// Shape (location/width) of one atom during the mean-squares fit. Weights
// are solved from the Gram system, never iterated. Center shapes keep
// omega = 0 frozen.
struct L2Shape {
  double omega = 0.0;
  double sigma = 1.0;
  bool is_center = false;

  GaussianAtom atom(double weight = 1.0) const {
    return {weight, is_center ? 0.0 : omega, sigma,
            is_center ? AtomKind::center : AtomKind::pair};
  }
};

struct L2Options {
  int max_iter = 2000;
  // Ascent stops when ||grad||_2 falls below grad_tol_rel times its initial
  // value (or below grad_tol_abs when that is set positive). The floating
  // point granularity of Q caps how far the backtracking line search can
  // push the gradient down, so much below ~1e-7 the ascent tends to stall
  // on rejections first.
  double grad_tol_rel = 1e-6;
  double grad_tol_abs = 0.0;
  double step0_scale = 1e-3;  // Delta_0 = step0_scale * Omega / max|grad_0|
  double step_grow = 1.2;
  double step_shrink = 0.5;
  int max_consecutive_rejections = 20;
  double sigma_min = kSigmaMin;
  bool record_history = true;
};

struct L2State {
  std::vector<L2Shape> shapes;
  std::vector<double> weights;  // solution of Gram * w = f, signed
  double q_value = 0.0;         // f^T G^{-1} f at the current shapes
  double step = 0.0;            // current ascent step Delta
};

struct L2HistoryRow {
  int iter = 0;
  double q = 0.0;
  double step = 0.0;
  double grad_norm = 0.0;
};

struct L2Fit {
  SignedMixture mixture;
  L2State state;
  std::vector<L2HistoryRow> history;
  bool converged = false;
  int iterations = 0;
  double amplitude_sq_norm = 0.0;  // trapezoid of A^2 over the grid
  double residual_sq_norm = 0.0;   // ||A - A_p||^2 via the quadratic expansion
};

// Gram matrix of the closed-form atom inner products. Throws on nearly
// coincident shapes (singular risk).
SymmetricMatrix assemble_gram(const std::vector<L2Shape>& shapes);

// Solves Gram * w = f by Cholesky; residual is refined to <= 1e-10 ||f||.
std::vector<double> solve_weights(const SymmetricMatrix& gram,
                                  std::span<const double> f);

// Gradient of Q = f^T G^{-1} f with respect to all shape parameters, two
// entries per shape [d/d omega, d/d sigma]; the omega entry of a center
// shape is zero. Weights in `state` must solve the Gram system for the
// current shapes.
std::vector<double> q_gradient(const L2State& state,
                               const SampledAmplitude& amplitude);

// Steepest ascent on Q with backtracking: accepted steps grow Delta, a
// rejected step (Q decrease or an ill-conditioned Gram at the proposal)
// halves it. Weights are re-solved at every accepted step.
L2Fit fit_l2(const SampledAmplitude& amplitude, std::vector<L2Shape> init,
             const L2Options& options = {});

// ||A - sum w_k G_k||^2 over the real line via
// trapz(A^2) - 2 w.f + w^T Gram w; exact up to quadrature in f.
double mixture_residual_sq_norm(const SampledAmplitude& amplitude,
                                const SignedMixture& mixture);

// Energy captured by the mixture: 2 w.f - w^T Gram w. Equals Q at solved
// least-squares weights.
double mixture_captured_energy(const SampledAmplitude& amplitude,
                               const SignedMixture& mixture);

}  // namespace chirplet
