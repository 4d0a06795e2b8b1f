#include "chirplet/gaussian_mixture.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chirplet {

namespace {

constexpr double kPi = std::numbers::pi;

double single_gaussian(double u, double sigma, int order) {
  const double e = std::exp(-u * u / (2.0 * sigma));
  switch (order) {
    case 0:
      return e;
    case 1:
      return -(u / sigma) * e;
    case 2:
      return (-1.0 / sigma + u * u / (sigma * sigma)) * e;
    default:
      throw std::invalid_argument("eval_atom: order must be 0, 1 or 2");
  }
}

}  // namespace

double eval_atom(const GaussianAtom& atom, double omega, int order) {
  if (atom.kind == AtomKind::center) return single_gaussian(omega, atom.sigma, order);
  return single_gaussian(omega - atom.omega_c, atom.sigma, order) +
         single_gaussian(omega + atom.omega_c, atom.sigma, order);
}

double atom_domega(const GaussianAtom& atom, double omega) {
  if (atom.kind == AtomKind::center) return 0.0;
  const double s = atom.sigma;
  const double um = omega - atom.omega_c;
  const double up = omega + atom.omega_c;
  return (um / s) * std::exp(-um * um / (2.0 * s)) -
         (up / s) * std::exp(-up * up / (2.0 * s));
}

double atom_dsigma(const GaussianAtom& atom, double omega) {
  const double s2 = 2.0 * atom.sigma * atom.sigma;
  if (atom.kind == AtomKind::center) {
    return (omega * omega / s2) * std::exp(-omega * omega / (2.0 * atom.sigma));
  }
  const double um = omega - atom.omega_c;
  const double up = omega + atom.omega_c;
  return (um * um / s2) * std::exp(-um * um / (2.0 * atom.sigma)) +
         (up * up / s2) * std::exp(-up * up / (2.0 * atom.sigma));
}

std::vector<double> mixture_eval(const SignedMixture& mix,
                                 std::span<const double> omegas, int order) {
  std::vector<double> out(omegas.size(), 0.0);
  for (std::size_t i = 0; i < omegas.size(); ++i)
    out[i] = mixture_eval_at(mix, omegas[i], order);
  return out;
}

double mixture_eval_at(const SignedMixture& mix, double omega, int order) {
  double acc = 0.0;
  if (mix.center) acc += mix.center->alpha * eval_atom(*mix.center, omega, order);
  for (const GaussianAtom& a : mix.positive) acc += a.alpha * eval_atom(a, omega, order);
  for (const GaussianAtom& a : mix.negative) acc -= a.alpha * eval_atom(a, omega, order);
  return acc;
}

double inner_product(const GaussianAtom& a, const GaussianAtom& b) {
  // Pair/pair closed form; each center argument contributes a factor 1/2
  // because a center atom equals half of a zero-centered pair atom.
  const double s = a.sigma + b.sigma;
  const double pref = 2.0 * std::sqrt(2.0 * a.sigma * b.sigma * kPi / s);
  const double wa = a.kind == AtomKind::center ? 0.0 : a.omega_c;
  const double wb = b.kind == AtomKind::center ? 0.0 : b.omega_c;
  const double dm = wa - wb;
  const double dp = wa + wb;
  double value = pref * (std::exp(-dm * dm / (2.0 * s)) + std::exp(-dp * dp / (2.0 * s)));
  if (a.kind == AtomKind::center) value *= 0.5;
  if (b.kind == AtomKind::center) value *= 0.5;
  return value;
}

double inner_product_grad(const GaussianAtom& a, const GaussianAtom& b,
                          ShapeParam wrt) {
  const double s = a.sigma + b.sigma;
  const double pref = 2.0 * std::sqrt(2.0 * a.sigma * b.sigma * kPi / s);
  const double wa = a.kind == AtomKind::center ? 0.0 : a.omega_c;
  const double wb = b.kind == AtomKind::center ? 0.0 : b.omega_c;
  const double dm = wa - wb;
  const double dp = wa + wb;
  const double e1 = std::exp(-dm * dm / (2.0 * s));
  const double e2 = std::exp(-dp * dp / (2.0 * s));

  double grad;
  if (wrt == ShapeParam::omega) {
    if (a.kind == AtomKind::center) return 0.0;  // center frequency is fixed
    grad = -(pref / s) * (dm * e1 + dp * e2);
  } else {
    // d(pref)/d(sigma_a) = pref * sigma_b / (2 sigma_a s)
    grad = pref * (b.sigma / (2.0 * a.sigma * s)) * (e1 + e2) +
           pref * (dm * dm * e1 + dp * dp * e2) / (2.0 * s * s);
  }
  if (a.kind == AtomKind::center) grad *= 0.5;
  if (b.kind == AtomKind::center) grad *= 0.5;
  return grad;
}

double self_inner_product_grad(const GaussianAtom& atom, ShapeParam wrt) {
  return 2.0 * inner_product_grad(atom, atom, wrt);
}

double discrete_inner_product(const SampledAmplitude& amplitude,
                              const GaussianAtom& atom, DiscreteKind kind) {
  if (amplitude.values.size() < 5 || amplitude.values.size() % 2 == 0)
    throw std::invalid_argument("discrete_inner_product: bad amplitude grid");
  if (!(amplitude.omega_max > 0.0))
    throw std::invalid_argument("discrete_inner_product: omega_max must be positive");

  const double h = amplitude.step();
  const std::size_t m = amplitude.values.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double w = amplitude.omega_at(i);
    double g;
    switch (kind) {
      case DiscreteKind::value:
        g = eval_atom(atom, w, 0);
        break;
      case DiscreteKind::grad_omega:
        g = atom_domega(atom, w);
        break;
      default:
        g = atom_dsigma(atom, w);
        break;
    }
    const double weight = (i == 0 || i == m - 1) ? 0.5 : 1.0;
    acc += weight * g * amplitude.values[i];
  }
  return acc * h;
}

}  // namespace chirplet
