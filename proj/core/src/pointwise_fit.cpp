#include "chirplet/pointwise_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chirplet {

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

GaussianAtom atom_of(const SelectionTarget& t, const AtomTriple& p) {
  GaussianAtom a;
  a.alpha = p.alpha;
  a.omega_c = t.is_center ? 0.0 : p.omega;
  a.sigma = p.sigma;
  a.kind = t.is_center ? AtomKind::center : AtomKind::pair;
  return a;
}

// Cross-term sums at target j: mixture value/derivatives of all other live
// atoms, each with its target sign.
struct CrossSums {
  double value = 0.0, d1 = 0.0, d2 = 0.0;
};

CrossSums cross_sums(const std::vector<SelectionTarget>& targets,
                     const std::vector<AtomTriple>& params,
                     const std::vector<bool>& dropped, std::size_t j,
                     double omega_j) {
  CrossSums s;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (k == j || dropped[k]) continue;
    const GaussianAtom a = atom_of(targets[k], params[k]);
    const double sk = sign_of(targets[k].value);
    s.value += sk * a.alpha * eval_atom(a, omega_j, 0);
    s.d1 += sk * a.alpha * eval_atom(a, omega_j, 1);
    s.d2 += sk * a.alpha * eval_atom(a, omega_j, 2);
  }
  return s;
}

struct ParamChange {
  double value = 0.0;
  void update(const AtomTriple& before, const AtomTriple& after) {
    const double tiny = 1e-300;
    const double da = std::abs(after.alpha - before.alpha) / std::max(std::abs(before.alpha), tiny);
    const double ds = std::abs(after.sigma - before.sigma) / std::max(before.sigma, tiny);
    const double width = std::sqrt(std::max(after.sigma, kSigmaMin));
    const double dw = std::abs(after.omega - before.omega) / std::max(width, tiny);
    value = std::max({value, da, ds, dw});
  }
};

struct SweepOutcome {
  std::vector<AtomTriple> params;
  double max_change = 0.0;
  std::vector<bool> skipped;
};

SweepOutcome sweep_signed(const std::vector<SelectionTarget>& targets,
                          const std::vector<AtomTriple>& old_params,
                          const std::vector<bool>& dropped) {
  SweepOutcome out;
  out.params = old_params;
  out.skipped.assign(targets.size(), false);
  ParamChange change;

  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (dropped[j]) continue;
    const SelectionTarget& t = targets[j];
    const double sj = sign_of(t.value);
    const AtomTriple& prev = old_params[j];

    // out.params holds updated triples for k < j and old triples for k >= j,
    // which is exactly the Gauss-Seidel mix the cross sums need.
    const CrossSums cross = cross_sums(targets, out.params, dropped, j, t.location);

    // Self mirror term, evaluated at the previous triple. Absent for the
    // center target (single Gaussian).
    double mirror_v = 0.0, mirror_d1 = 0.0, mirror_d2 = 0.0;
    if (!t.is_center) {
      const double up = t.location + prev.omega;
      const double e = std::exp(-up * up / (2.0 * prev.sigma));
      mirror_v = prev.alpha * e;
      mirror_d1 = prev.alpha * (up / prev.sigma) * e;
      mirror_d2 = prev.alpha * (-1.0 / prev.sigma + up * up / (prev.sigma * prev.sigma)) * e;
    }

    // Solving for the near Gaussian of atom j:
    //   alpha e^{-(W-w)^2/2s}                    = A
    //   alpha ((W-w)/s) e^{-(W-w)^2/2s}          = B
    //   alpha (-1/s + (W-w)^2/s^2) e^{-(W-w)^2/2s} = C
    // The sign on B follows from isolating the near term of the slope
    // condition, whose total (atom + others) vanishes at the target.
    const double a_j = sj * (t.value - cross.value) - mirror_v;
    const double b_j = sj * cross.d1 - mirror_d1;
    const double c_j = sj * (t.second_deriv - cross.d2) - mirror_d2;

    if (!(a_j > 0.0) || !(c_j < 0.0)) {
      out.skipped[j] = true;
      continue;
    }

    const double d_j = b_j / a_j;
    double sigma = a_j / (a_j * d_j * d_j - c_j);
    sigma = std::max(sigma, kSigmaMin);
    AtomTriple next;
    next.sigma = sigma;
    next.omega = t.is_center ? 0.0 : t.location - sigma * d_j;
    next.alpha = a_j * std::exp(sigma * d_j * d_j / 2.0);

    change.update(prev, next);
    out.params[j] = next;
  }
  out.max_change = change.value;
  return out;
}

std::vector<SelectionTarget> to_targets(const std::vector<ExtremumPoint>& maxima) {
  std::vector<SelectionTarget> targets;
  targets.reserve(maxima.size());
  for (const ExtremumPoint& p : maxima)
    targets.push_back({p.location, p.value, p.second_deriv, false});
  return targets;
}

AtomTriple initial_triple(const SelectionTarget& t) {
  if (!(std::abs(t.value) > 0.0))
    throw std::invalid_argument("init_params: target value must be nonzero");
  if (!(t.value * t.second_deriv < 0.0))
    throw std::invalid_argument("init_params: target curvature has the wrong sign");
  AtomTriple p;
  p.alpha = std::abs(t.value);
  p.omega = t.is_center ? 0.0 : t.location;
  p.sigma = -t.value / t.second_deriv;
  return p;
}

bool conditions_hold(const std::vector<SelectionTarget>& targets,
                     const SignedMixture& mix,
                     const std::vector<bool>& dropped, double tol) {
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (dropped[j]) continue;
    const SelectionTarget& t = targets[j];
    const double m0 = mixture_eval_at(mix, t.location, 0);
    const double m1 = mixture_eval_at(mix, t.location, 1);
    const double m2 = mixture_eval_at(mix, t.location, 2);
    const double s2 = std::abs(t.second_deriv);
    const double width = std::sqrt(std::max(-t.value / t.second_deriv, kSigmaMin));
    if (std::abs(m0 - t.value) > 10.0 * tol * std::abs(t.value)) return false;
    if (std::abs(m1) > 10.0 * tol * s2 * width) return false;
    if (std::abs(m2 - t.second_deriv) > 10.0 * tol * s2) return false;
  }
  return true;
}

SignedMixture assemble_mixture(const std::vector<SelectionTarget>& targets,
                               const std::vector<AtomTriple>& params,
                               const std::vector<bool>& dropped) {
  SignedMixture mix;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (dropped[j]) continue;
    const SelectionTarget& t = targets[j];
    GaussianAtom a = atom_of(t, params[j]);
    if (t.is_center) {
      a.alpha = sign_of(t.value) * a.alpha;  // signed center weight
      mix.center = a;
    } else if (t.value >= 0.0) {
      mix.positive.push_back(a);
    } else {
      mix.negative.push_back(a);
    }
  }
  auto by_center = [](const GaussianAtom& a, const GaussianAtom& b) {
    return a.omega_c < b.omega_c;
  };
  std::sort(mix.positive.begin(), mix.positive.end(), by_center);
  std::sort(mix.negative.begin(), mix.negative.end(), by_center);
  return mix;
}

}  // namespace

PointwiseState init_params(const std::vector<ExtremumPoint>& targets) {
  PointwiseState state;
  state.params.reserve(targets.size());
  for (const ExtremumPoint& p : targets) {
    if (p.kind != ExtremumKind::maximum || !(p.value > 0.0))
      throw std::invalid_argument("init_params: targets must be positive-valued maxima");
    if (!(p.second_deriv < 0.0))
      throw std::invalid_argument("init_params: target maximum is degenerate");
    state.params.push_back(initial_triple({p.location, p.value, p.second_deriv, false}));
  }
  return state;
}

PointwiseState sweep(const PointwiseState& state,
                     const std::vector<ExtremumPoint>& targets) {
  if (state.params.size() != targets.size())
    throw std::invalid_argument("sweep: state/target size mismatch");
  const std::vector<SelectionTarget> t = to_targets(targets);
  const std::vector<bool> dropped(t.size(), false);
  SweepOutcome out = sweep_signed(t, state.params, dropped);
  PointwiseState next;
  next.params = std::move(out.params);
  next.iteration = state.iteration + 1;
  next.last_change = out.max_change;
  return next;
}

PointwiseFit fit_pointwise_signed(const std::vector<SelectionTarget>& targets,
                                  const PointwiseConfig& config) {
  if (targets.empty()) throw std::invalid_argument("fit_pointwise_signed: no targets");
  if (!(config.tol > 0.0)) throw std::invalid_argument("fit_pointwise_signed: tol must be positive");

  std::vector<AtomTriple> params;
  params.reserve(targets.size());
  for (const SelectionTarget& t : targets) params.push_back(initial_triple(t));

  PointwiseDiagnostics diag;
  diag.skip_counts.assign(targets.size(), 0);
  diag.dropped.assign(targets.size(), false);
  std::vector<int> consecutive(targets.size(), 0);

  if (config.record_history) diag.history.push_back(params);

  for (int it = 0; it < config.max_iter; ++it) {
    SweepOutcome out = sweep_signed(targets, params, diag.dropped);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (diag.dropped[j]) continue;
      if (out.skipped[j]) {
        ++diag.skip_counts[j];
        if (++consecutive[j] >= config.max_consecutive_skips) diag.dropped[j] = true;
      } else {
        consecutive[j] = 0;
      }
    }
    params = std::move(out.params);
    diag.iterations = it + 1;
    diag.last_change = out.max_change;
    if (config.record_history) diag.history.push_back(params);
    if (out.max_change < config.tol) {
      diag.converged = true;
      break;
    }
  }

  PointwiseFit fit;
  fit.mixture = assemble_mixture(targets, params, diag.dropped);
  diag.conditions_ok =
      diag.converged && conditions_hold(targets, fit.mixture, diag.dropped, config.tol);
  fit.diagnostics = std::move(diag);
  return fit;
}

PointwiseFit fit_pointwise(const SampledAmplitude& amplitude,
                           const std::vector<ExtremumPoint>& targets,
                           double tol, int max_iter) {
  for (const ExtremumPoint& p : targets)
    if (p.kind != ExtremumKind::maximum || !(p.value > 0.0) || !(p.second_deriv < 0.0))
      throw std::invalid_argument("fit_pointwise: targets must be non-degenerate positive maxima");

  PointwiseConfig config;
  config.tol = tol;
  config.max_iter = max_iter;
  PointwiseFit fit = fit_pointwise_signed(to_targets(targets), config);

  double sup = 0.0;
  for (std::size_t i = 0; i < amplitude.values.size(); ++i) {
    const double model = mixture_eval_at(fit.mixture, amplitude.omega_at(i), 0);
    sup = std::max(sup, std::abs(amplitude.values[i] - model));
  }
  fit.diagnostics.sup_error = sup;
  return fit;
}

}  // namespace chirplet
