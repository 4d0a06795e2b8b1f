#include "chirplet/l2_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chirplet/errors.hpp"
#include "chirplet/numerics.hpp"

namespace chirplet {

namespace {

std::vector<double> discrete_f(const SampledAmplitude& amplitude,
                               const std::vector<L2Shape>& shapes) {
  std::vector<double> f(shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i)
    f[i] = discrete_inner_product(amplitude, shapes[i].atom(), DiscreteKind::value);
  return f;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double amplitude_sq_norm(const SampledAmplitude& amplitude) {
  std::vector<double> sq(amplitude.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = amplitude.values[i] * amplitude.values[i];
  return trapezoid(sq, amplitude.step());
}

// Flattens a signed mixture into (atoms, signed weights) so the expansion
// formulas below work for any of its configurations.
struct FlatMixture {
  std::vector<GaussianAtom> atoms;
  std::vector<double> weights;
};

FlatMixture flatten(const SignedMixture& mixture) {
  FlatMixture flat;
  if (mixture.center) {
    GaussianAtom c = *mixture.center;
    flat.weights.push_back(c.alpha);
    c.alpha = 1.0;
    flat.atoms.push_back(c);
  }
  for (const GaussianAtom& a : mixture.positive) {
    GaussianAtom g = a;
    flat.weights.push_back(g.alpha);
    g.alpha = 1.0;
    flat.atoms.push_back(g);
  }
  for (const GaussianAtom& a : mixture.negative) {
    GaussianAtom g = a;
    flat.weights.push_back(-g.alpha);
    g.alpha = 1.0;
    flat.atoms.push_back(g);
  }
  return flat;
}

double expansion_energy(const SampledAmplitude& amplitude, const FlatMixture& flat) {
  const std::size_t n = flat.atoms.size();
  double wf = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    wf += flat.weights[i] *
          discrete_inner_product(amplitude, flat.atoms[i], DiscreteKind::value);
  double wgw = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      wgw += flat.weights[i] * flat.weights[j] * inner_product(flat.atoms[i], flat.atoms[j]);
  return 2.0 * wf - wgw;
}

}  // namespace

SymmetricMatrix assemble_gram(const std::vector<L2Shape>& shapes) {
  if (shapes.empty()) throw std::invalid_argument("assemble_gram: no shapes");
  for (const L2Shape& s : shapes)
    if (!(s.sigma > 0.0)) throw std::invalid_argument("assemble_gram: sigma must be positive");

  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      const bool same_kind = shapes[i].is_center == shapes[j].is_center;
      const double scale = std::max({std::abs(shapes[i].omega), std::abs(shapes[j].omega), 1.0});
      if (same_kind && std::abs(shapes[i].omega - shapes[j].omega) < 1e-10 * scale &&
          std::abs(shapes[i].sigma - shapes[j].sigma) < 1e-10 * shapes[i].sigma)
        throw std::invalid_argument("assemble_gram: coincident shapes make the Gram singular");
    }

  SymmetricMatrix g = SymmetricMatrix::zeros(shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i; j < shapes.size(); ++j) {
      const double v = inner_product(shapes[i].atom(), shapes[j].atom());
      g.at(i, j) = v;
      g.at(j, i) = v;
    }
  return g;
}

std::vector<double> solve_weights(const SymmetricMatrix& gram,
                                  std::span<const double> f) {
  std::vector<double> w = cholesky_solve(gram, f);

  // One step of iterative refinement keeps ||G w - f|| well under 1e-10 ||f||.
  const std::size_t n = gram.n;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = f[i];
    for (std::size_t j = 0; j < n; ++j) s -= gram.at(i, j) * w[j];
    r[i] = s;
  }
  const std::vector<double> dw = cholesky_solve(gram, r);
  for (std::size_t i = 0; i < n; ++i) w[i] += dw[i];
  return w;
}

std::vector<double> q_gradient(const L2State& state,
                               const SampledAmplitude& amplitude) {
  const std::size_t p = state.shapes.size();
  if (state.weights.size() != p) throw std::invalid_argument("q_gradient: stale weights");

  std::vector<GaussianAtom> atoms(p);
  for (std::size_t i = 0; i < p; ++i) atoms[i] = state.shapes[i].atom();

  std::vector<double> grad(2 * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (int which = 0; which < 2; ++which) {
      const bool wrt_omega = which == 0;
      if (wrt_omega && state.shapes[i].is_center) continue;  // frozen parameter
      const ShapeParam param = wrt_omega ? ShapeParam::omega : ShapeParam::sigma;
      const DiscreteKind kind = wrt_omega ? DiscreteKind::grad_omega : DiscreteKind::grad_sigma;

      const double df = discrete_inner_product(amplitude, atoms[i], kind);
      double cross = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        if (j == i) continue;
        cross += inner_product_grad(atoms[i], atoms[j], param) * state.weights[j];
      }
      const double self = self_inner_product_grad(atoms[i], param);
      grad[2 * i + which] =
          2.0 * state.weights[i] * (df - cross) - state.weights[i] * state.weights[i] * self;
    }
  }
  return grad;
}

namespace {

SignedMixture mixture_from(const std::vector<L2Shape>& shapes,
                           std::span<const double> weights) {
  SignedMixture mix;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const double w = weights[i];
    if (shapes[i].is_center) {
      GaussianAtom c = shapes[i].atom(w);  // signed center weight
      mix.center = c;
      continue;
    }
    if (w == 0.0) continue;
    if (w > 0.0)
      mix.positive.push_back(shapes[i].atom(w));
    else
      mix.negative.push_back(shapes[i].atom(-w));
  }
  auto by_center = [](const GaussianAtom& a, const GaussianAtom& b) {
    return a.omega_c < b.omega_c;
  };
  std::sort(mix.positive.begin(), mix.positive.end(), by_center);
  std::sort(mix.negative.begin(), mix.negative.end(), by_center);
  return mix;
}

}  // namespace

L2Fit fit_l2(const SampledAmplitude& amplitude, std::vector<L2Shape> init,
             const L2Options& options) {
  if (init.empty()) throw std::invalid_argument("fit_l2: no initial shapes");
  const double omega_bound = amplitude.omega_max;
  const double sigma_max = 4.0 * omega_bound * omega_bound;  // (2 Omega)^2

  auto project = [&](std::vector<L2Shape>& shapes) {
    for (L2Shape& s : shapes) {
      s.sigma = std::clamp(s.sigma, options.sigma_min, sigma_max);
      s.omega = s.is_center ? 0.0 : std::clamp(s.omega, 0.0, omega_bound);
    }
  };
  project(init);

  auto evaluate = [&](const std::vector<L2Shape>& shapes, L2State& state) {
    const SymmetricMatrix gram = assemble_gram(shapes);
    const std::vector<double> f = discrete_f(amplitude, shapes);
    state.shapes = shapes;
    state.weights = solve_weights(gram, f);
    state.q_value = dot(f, state.weights);
  };

  L2State state;
  evaluate(init, state);

  L2Fit fit;
  fit.amplitude_sq_norm = amplitude_sq_norm(amplitude);

  std::vector<double> grad = q_gradient(state, amplitude);
  double grad_norm = std::sqrt(dot(grad, grad));
  double grad_inf = 0.0;
  for (double g : grad) grad_inf = std::max(grad_inf, std::abs(g));

  const double tol = options.grad_tol_abs > 0.0
                         ? options.grad_tol_abs
                         : std::max(options.grad_tol_rel * grad_norm, 1e-300);

  double step = grad_inf > 0.0 ? options.step0_scale * omega_bound / grad_inf : 0.0;
  state.step = step;

  int rejections = 0;
  bool converged = grad_norm <= tol;
  int iter = 0;

  if (options.record_history) fit.history.push_back({0, state.q_value, step, grad_norm});

  while (!converged && iter < options.max_iter) {
    ++iter;
    std::vector<L2Shape> proposal = state.shapes;
    for (std::size_t i = 0; i < proposal.size(); ++i) {
      proposal[i].omega += step * grad[2 * i];
      proposal[i].sigma += step * grad[2 * i + 1];
    }
    project(proposal);

    bool accepted = false;
    L2State trial;
    try {
      evaluate(proposal, trial);
      accepted = trial.q_value > state.q_value;
    } catch (const ill_conditioned_error&) {
      accepted = false;  // shrink the step and retry
    } catch (const std::invalid_argument&) {
      accepted = false;  // coincident shapes at the proposal
    }

    if (accepted) {
      state = trial;
      step *= options.step_grow;
      rejections = 0;
      grad = q_gradient(state, amplitude);
      grad_norm = std::sqrt(dot(grad, grad));
      if (grad_norm <= tol) converged = true;
    } else {
      step *= options.step_shrink;
      if (++rejections >= options.max_consecutive_rejections) break;
    }
    state.step = step;
    if (options.record_history)
      fit.history.push_back({iter, state.q_value, step, grad_norm});
  }

  fit.converged = converged;
  fit.iterations = iter;
  fit.state = state;
  fit.mixture = mixture_from(state.shapes, state.weights);
  fit.residual_sq_norm =
      fit.amplitude_sq_norm - expansion_energy(amplitude, flatten(fit.mixture));
  return fit;
}

double mixture_residual_sq_norm(const SampledAmplitude& amplitude,
                                const SignedMixture& mixture) {
  return amplitude_sq_norm(amplitude) - expansion_energy(amplitude, flatten(mixture));
}

double mixture_captured_energy(const SampledAmplitude& amplitude,
                               const SignedMixture& mixture) {
  return expansion_energy(amplitude, flatten(mixture));
}

}  // namespace chirplet
