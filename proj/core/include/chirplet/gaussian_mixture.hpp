#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chirplet/spectrum.hpp"

namespace chirplet {

enum class AtomKind { center, pair };

// One even Gaussian building block of the amplitude model:
//   pair:   g(w) = exp(-(w-wc)^2 / 2s) + exp(-(w+wc)^2 / 2s)
//   center: g(w) = exp(-w^2 / 2s)            (wc fixed at 0)
// `alpha` is the stored weight; atoms in the negative list of a mixture are
// applied with a minus sign but keep alpha > 0.
struct GaussianAtom {
  double alpha = 1.0;
  double omega_c = 0.0;
  double sigma = 1.0;
  AtomKind kind = AtomKind::pair;
};

// Width floor: updates below this are clamped by the fitters.
inline constexpr double kSigmaMin = 1e-8;

// Signed mixture: optional center Gaussian, positive pair atoms, and
// negative pair atoms (weights stored positive, applied with minus sign).
// Positive and negative centers are kept strictly increasing. The center
// alpha may carry either sign at refinement levels where the least-squares
// solve turns it negative.
struct SignedMixture {
  std::optional<GaussianAtom> center;
  std::vector<GaussianAtom> positive;
  std::vector<GaussianAtom> negative;

  std::size_t atom_count() const {
    return (center ? 1 : 0) + positive.size() + negative.size();
  }
  bool empty() const { return atom_count() == 0; }
};

// Unweighted atom shape and its first/second omega-derivatives.
double eval_atom(const GaussianAtom& atom, double omega, int order);

// Derivatives of the atom shape with respect to its own parameters.
double atom_domega(const GaussianAtom& atom, double omega);
double atom_dsigma(const GaussianAtom& atom, double omega);

// Pointwise mixture evaluation (center + positive - negative) at the given
// derivative order in omega.
std::vector<double> mixture_eval(const SignedMixture& mix,
                                 std::span<const double> omegas, int order = 0);
double mixture_eval_at(const SignedMixture& mix, double omega, int order = 0);

// Closed-form L2 inner product over the real line. For two pair atoms this is
//   2 sqrt(2 si sj pi / (si+sj)) (exp(-(wi-wj)^2/(2(si+sj)))
//                                + exp(-(wi+wj)^2/(2(si+sj))));
// each center argument halves the value (a center atom is half of a pair
// atom centered at zero). Weights are not applied.
double inner_product(const GaussianAtom& a, const GaussianAtom& b);

enum class ShapeParam { omega, sigma };

// Partial derivative of inner_product with respect to one parameter of `a`
// only (single-slot derivative). For the derivative of <G,G> as a function
// of the shared parameters use self_inner_product_grad, which is twice this
// by symmetry.
double inner_product_grad(const GaussianAtom& a, const GaussianAtom& b,
                          ShapeParam wrt);

double self_inner_product_grad(const GaussianAtom& atom, ShapeParam wrt);

enum class DiscreteKind { value, grad_omega, grad_sigma };

// Discrete inner product of an atom (or its parameter gradient) against an
// amplitude sampled on the symmetric grid:
//   (Omega/N) Sum_p G(p Omega/N) A(p Omega/N)
// with half weights at the +-Omega endpoints.
double discrete_inner_product(const SampledAmplitude& amplitude,
                              const GaussianAtom& atom,
                              DiscreteKind kind = DiscreteKind::value);

}  // namespace chirplet
