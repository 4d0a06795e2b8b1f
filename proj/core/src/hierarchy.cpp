#include "chirplet/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chirplet/errors.hpp"
#include "chirplet/numerics.hpp"

namespace chirplet {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sq_norm(const SampledAmplitude& a) {
  std::vector<double> sq(a.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = a.values[i] * a.values[i];
  return trapezoid(sq, a.step());
}

struct TargetSet {
  std::vector<SelectionTarget> targets;  // center first when present
  int p_n = 0;
  int q_n = 0;
  bool has_center = false;
};

TargetSet select_targets(const SampledAmplitude& residual_values,
                         double prominence_rel) {
  const double prominence = prominence_rel * max_abs(residual_values.values);
  ExtremaResult ex;
  try {
    ex = find_extrema(residual_values.half(), residual_values.omega_max, prominence);
  } catch (const degenerate_input_error&) {
    return {};
  }

  TargetSet set;
  if (ex.origin == ExtremumKind::maximum && ex.origin_value > prominence &&
      ex.origin_second_deriv < 0.0) {
    set.targets.push_back({0.0, ex.origin_value, ex.origin_second_deriv, true});
    set.has_center = true;
  }
  for (const ExtremumPoint& p : ex.interior) {
    if (p.kind == ExtremumKind::maximum && p.value > 0.0) {
      set.targets.push_back({p.location, p.value, p.second_deriv, false});
      ++set.p_n;
    } else if (p.kind == ExtremumKind::minimum && p.value < 0.0) {
      set.targets.push_back({p.location, p.value, p.second_deriv, false});
      ++set.q_n;
    }
  }
  return set;
}

RefineStep fit_targets(const SampledAmplitude& residual_values,
                       const TargetSet& set, const HierarchyConfig& config) {
  RefineStep step;
  step.p_n = set.p_n;
  step.q_n = set.q_n;
  step.has_center = set.has_center;
  if (set.targets.empty()) {
    step.nothing_to_fit = true;
    return step;
  }

  if (config.method == FitMethod::pointwise) {
    PointwiseFit fit = fit_pointwise_signed(set.targets, config.pointwise);
    step.mixture = std::move(fit.mixture);
    step.fit_converged = fit.diagnostics.converged;
    return step;
  }

  std::vector<L2Shape> shapes;
  shapes.reserve(set.targets.size());
  for (const SelectionTarget& t : set.targets)
    shapes.push_back({t.location, -t.value / t.second_deriv, t.is_center});
  L2Fit fit = fit_l2(residual_values, std::move(shapes), config.l2);
  step.mixture = std::move(fit.mixture);
  step.fit_converged = fit.converged;
  return step;
}

}  // namespace

std::vector<double> residual(const SampledAmplitude& original,
                             std::span<const SignedMixture> levels) {
  std::vector<double> out = original.values;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double w = original.omega_at(i);
    for (const SignedMixture& mix : levels) out[i] -= mixture_eval_at(mix, w, 0);
  }
  return out;
}

RefineStep refine_once(const SampledAmplitude& residual_values,
                       const HierarchyConfig& config) {
  return fit_targets(residual_values, select_targets(residual_values, config.prominence_rel),
                     config);
}

RefinementLedger refine_until(const SampledAmplitude& original,
                              const HierarchyConfig& config) {
  if (config.max_levels < 1) throw std::invalid_argument("refine_until: max_levels must be >= 1");

  RefinementLedger ledger;
  ledger.method = config.method;
  ledger.initial_sq_norm = sq_norm(original);

  double eps = config.eps_stop;
  if (!(eps > 0.0)) {
    eps = config.method == FitMethod::l2
              ? 1e-4 * ledger.initial_sq_norm
              : 1e-3 * *std::max_element(original.values.begin(), original.values.end());
  }
  ledger.eps_stop = eps;

  SampledAmplitude current = original;
  double current_sq_norm = ledger.initial_sq_norm;

  for (int level = 0; level < config.max_levels; ++level) {
    const bool stop_l2 = config.method == FitMethod::l2 && current_sq_norm <= eps;
    const double cmax = *std::max_element(current.values.begin(), current.values.end());
    const double cmin = *std::min_element(current.values.begin(), current.values.end());
    const bool stop_pw = config.method == FitMethod::pointwise && cmax <= eps && cmin >= -eps;
    if (stop_l2 || stop_pw) {
      ledger.stop = StopReason::threshold;
      return ledger;
    }

    RefineStep step = refine_once(current, config);
    if (step.nothing_to_fit || step.mixture.empty()) {
      ledger.stop = StopReason::no_extrema;
      return ledger;
    }

    const double q = mixture_captured_energy(current, step.mixture);

    std::vector<double> next = current.values;
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] -= mixture_eval_at(step.mixture, current.omega_at(i), 0);
    SampledAmplitude next_amp{current.omega_max, std::move(next)};
    const double next_sq_norm = sq_norm(next_amp);

    if (next_sq_norm > current_sq_norm * (1.0 + 1e-12)) {
      ledger.stop = StopReason::non_improving;
      return ledger;
    }

    RefinementLevel rec;
    rec.mixture = std::move(step.mixture);
    rec.q_max = q;
    rec.residual_sq_norm = next_sq_norm;
    rec.p_n = step.p_n;
    rec.q_n = step.q_n;
    rec.has_center = step.has_center;
    rec.fit_converged = step.fit_converged;
    ledger.levels.push_back(std::move(rec));

    current = std::move(next_amp);
    current_sq_norm = next_sq_norm;
  }
  ledger.stop = StopReason::max_levels;
  return ledger;
}

}  // namespace chirplet
