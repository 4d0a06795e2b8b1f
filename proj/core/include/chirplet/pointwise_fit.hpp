#pragma once

#include <vector>

#include "chirplet/extrema.hpp"
#include "chirplet/gaussian_mixture.hpp"
#include "chirplet/spectrum.hpp"

namespace chirplet {

struct AtomTriple {
  double alpha = 0.0;  // stored positive; target sign applied outside
  double omega = 0.0;
  double sigma = 0.0;
};

// Interpolation target: the mixture must match (value, zero slope,
// second_deriv) at `location`. Negative-valued minima carry value < 0 and
// second_deriv > 0 and produce negative-list atoms. The center target sits
// at location 0 and fits the single center Gaussian (two free parameters,
// the slope condition holds by evenness).
struct SelectionTarget {
  double location = 0.0;
  double value = 0.0;
  double second_deriv = 0.0;
  bool is_center = false;
};

struct PointwiseConfig {
  double tol = 1e-9;
  int max_iter = 200;
  int max_consecutive_skips = 10;  // guard failures before an atom is dropped
  bool record_history = true;
};

struct PointwiseState {
  std::vector<AtomTriple> params;  // aligned with targets
  int iteration = 0;
  double last_change = 0.0;  // max scaled parameter change of the last sweep
};

struct PointwiseDiagnostics {
  bool converged = false;
  int iterations = 0;
  double last_change = 0.0;
  bool conditions_ok = false;  // interpolation conditions hold at 10*tol
  double sup_error = 0.0;      // max |A - A_p| over the grid when available
  std::vector<int> skip_counts;  // total guard failures per target
  std::vector<bool> dropped;     // atoms removed after persistent failures
  std::vector<std::vector<AtomTriple>> history;  // parameter table per sweep
};

struct PointwiseFit {
  SignedMixture mixture;
  PointwiseDiagnostics diagnostics;
};

// Initial parameters: alpha = A(Omega_j), omega = Omega_j,
// sigma = -A(Omega_j)/A''(Omega_j). Targets must be non-degenerate maxima
// with positive value; others are rejected (std::invalid_argument).
PointwiseState init_params(const std::vector<ExtremumPoint>& targets);

// One Gauss-Seidel sweep over maxima targets: each triple is recomputed from
// already-updated neighbours below it and old neighbours above it. Indices
// whose guards fail (A <= 0 or C >= 0) keep their triple.
PointwiseState sweep(const PointwiseState& state,
                     const std::vector<ExtremumPoint>& targets);

// Repeats sweeps until the largest scaled parameter change drops below tol
// or max_iter is reached. `amplitude` is only consulted for the sup-norm
// diagnostic; the fit itself consumes the refined target data.
PointwiseFit fit_pointwise(const SampledAmplitude& amplitude,
                           const std::vector<ExtremumPoint>& targets,
                           double tol = 1e-9, int max_iter = 200);

// Signed generalization used by the hierarchical refinement: positive
// maxima, negative minima and an optional center target fitted in a single
// Gauss-Seidel pass.
PointwiseFit fit_pointwise_signed(const std::vector<SelectionTarget>& targets,
                                  const PointwiseConfig& config);

}  // namespace chirplet
