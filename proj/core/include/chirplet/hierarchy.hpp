#pragma once

#include <span>
#include <vector>

#include "chirplet/extrema.hpp"
#include "chirplet/gaussian_mixture.hpp"
#include "chirplet/l2_fit.hpp"
#include "chirplet/pointwise_fit.hpp"
#include "chirplet/spectrum.hpp"

namespace chirplet {

enum class FitMethod { pointwise, l2 };

enum class StopReason {
  not_stopped,
  threshold,      // residual fell below eps_stop
  no_extrema,     // refine step found nothing to fit
  non_improving,  // a fitted level failed to shrink the residual (discarded)
  max_levels
};

struct HierarchyConfig {
  FitMethod method = FitMethod::l2;
  // 0 selects the default: 1e-4 * ||A0||^2 for the L2 method,
  // 1e-3 * max A0 for the pointwise method.
  double eps_stop = 0.0;
  int max_levels = 8;
  double prominence_rel = kDefaultProminenceRel;  // of max |A_n| per level
  PointwiseConfig pointwise;
  L2Options l2;
};

struct RefinementLevel {
  SignedMixture mixture;
  double q_max = 0.0;             // energy captured by this level
  double residual_sq_norm = 0.0;  // ||A_{n+1}||^2 after this level (quadrature)
  int p_n = 0;                    // positive maxima targeted
  int q_n = 0;                    // negative minima targeted
  bool has_center = false;
  bool fit_converged = false;
};

struct RefinementLedger {
  FitMethod method = FitMethod::l2;
  double eps_stop = 0.0;
  double initial_sq_norm = 0.0;  // ||A_0||^2
  StopReason stop = StopReason::not_stopped;
  std::vector<RefinementLevel> levels;
};

// Pointwise residual A_n = A_0 - sum of level mixtures on the original grid.
std::vector<double> residual(const SampledAmplitude& original,
                             std::span<const SignedMixture> levels);

struct RefineStep {
  SignedMixture mixture;
  int p_n = 0;
  int q_n = 0;
  bool has_center = false;
  bool fit_converged = false;
  bool nothing_to_fit = false;
};

// Fits one signed mixture to the current residual: pair atoms at its
// positive maxima and negative minima, a center atom when the origin is a
// positive-valued maximum.
RefineStep refine_once(const SampledAmplitude& residual_values,
                       const HierarchyConfig& config);

// Level-by-level refinement with the method's stopping rule. Levels that
// fail to shrink the residual are discarded and stop the loop;
// non-converged level fits are recorded and refinement continues.
RefinementLedger refine_until(const SampledAmplitude& original,
                              const HierarchyConfig& config);

}  // namespace chirplet
