#include <doctest.h>

#include <cmath>
#include <random>

#include "chirplet/extrema.hpp"
#include "chirplet/generators.hpp"
#include "chirplet/pointwise_fit.hpp"
#include "test_helpers.hpp"

using namespace chirplet;
using testutil::close;

namespace {

const ExtremumPoint kAcademicTarget{1.0, 13.5, -36.0, ExtremumKind::maximum};

}  // namespace

TEST_CASE("init_params: academic target and rejection rules") {
  const PointwiseState st = init_params({kAcademicTarget});
  REQUIRE(st.params.size() == 1);
  CHECK(st.params[0].alpha == doctest::Approx(13.5));
  CHECK(st.params[0].omega == doctest::Approx(1.0));
  CHECK(st.params[0].sigma == doctest::Approx(0.375));

  CHECK_THROWS_AS(init_params({{1.0, 0.0, -36.0, ExtremumKind::maximum}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(init_params({{1.0, 13.5, 0.5, ExtremumKind::maximum}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(init_params({{1.0, -2.0, 0.5, ExtremumKind::minimum}}),
                  std::invalid_argument);

  const PointwiseState two =
      init_params({kAcademicTarget, {2.5, 4.0, -8.0, ExtremumKind::maximum}});
  CHECK(two.params.size() == 2);
  CHECK(two.params[1].sigma == doctest::Approx(0.5));
}

TEST_CASE("fit_pointwise reproduces the published academic parameters") {
  const SampledAmplitude amp = testutil::academic_samples(4.0, 2048);
  const PointwiseFit fit = fit_pointwise(amp, {kAcademicTarget}, 1e-12, 300);

  REQUIRE(fit.mixture.positive.size() == 1);
  const GaussianAtom& a = fit.mixture.positive.front();
  CHECK(close(a.alpha, 13.4515, 5e-4));
  CHECK(close(a.omega_c, 1.0074, 5e-4));
  CHECK(close(a.sigma, 0.3595, 5e-4));
  CHECK(fit.diagnostics.converged);
  CHECK(fit.diagnostics.conditions_ok);

  // max A1 = A1(+-1) = 13.5 by construction of the interpolation conditions
  CHECK(close(mixture_eval_at(fit.mixture, 1.0), 13.5, 1e-9));
  CHECK(std::abs(mixture_eval_at(fit.mixture, 1.0, 1)) < 1e-8);
  CHECK(close(mixture_eval_at(fit.mixture, 1.0, 2), -36.0, 1e-9));
  const double peak = testutil::argmax_near(
      [&](double w) { return mixture_eval_at(fit.mixture, w); }, 1.0, 0.2);
  CHECK(close(mixture_eval_at(fit.mixture, peak), 13.5, 1e-6));
}

TEST_CASE("sweep is a fixed point on an exactly representable amplitude") {
  // ground truth mixture, extremum data taken from the mixture itself
  SignedMixture truth;
  truth.positive.push_back({3.0, 1.4, 0.2, AtomKind::pair});

  const double peak = testutil::argmax_near(
      [&](double w) { return mixture_eval_at(truth, w); }, 1.4, 0.1);
  const ExtremumPoint target{peak, mixture_eval_at(truth, peak),
                             mixture_eval_at(truth, peak, 2), ExtremumKind::maximum};

  // converge first, then check one more sweep moves nothing
  const SampledAmplitude amp = testutil::sample_function(
      [&](double w) { return mixture_eval_at(truth, w); }, 4.0, 512);
  const PointwiseFit fit = fit_pointwise(amp, {target}, 1e-13, 500);
  REQUIRE(fit.mixture.positive.size() == 1);
  CHECK(close(fit.mixture.positive[0].alpha, 3.0, 1e-8));
  CHECK(close(fit.mixture.positive[0].omega_c, 1.4, 1e-8));
  CHECK(close(fit.mixture.positive[0].sigma, 0.2, 1e-8));

  PointwiseState st;
  st.params = {{fit.mixture.positive[0].alpha, fit.mixture.positive[0].omega_c,
                fit.mixture.positive[0].sigma}};
  const PointwiseState next = sweep(st, {target});
  CHECK(next.last_change <= 1e-10);
}

TEST_CASE("far-separated atom: one sweep stays at the init values") {
  // omega >> sqrt(sigma): the mirror term is negligible
  const ExtremumPoint target{20.0, 5.0, -50.0, ExtremumKind::maximum};
  const PointwiseState st = init_params({target});
  const PointwiseState next = sweep(st, {target});
  CHECK(close(next.params[0].alpha, st.params[0].alpha, 1e-12));
  CHECK(close(next.params[0].omega, st.params[0].omega, 1e-12));
  CHECK(close(next.params[0].sigma, st.params[0].sigma, 1e-12));
}

TEST_CASE("pointwise error is cubic near the matched maximum") {
  const SampledAmplitude amp = testutil::academic_samples(4.0, 2048);
  const PointwiseFit fit = fit_pointwise(amp, {kAcademicTarget}, 1e-12, 300);

  // log-log regression of |A - A_p| against the distance to the target
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = 0; k < 40; ++k) {
    const double d = 1e-3 * std::pow(100.0, k / 39.0);  // [1e-3, 1e-1]
    const double err =
        std::abs(academic_amplitude(1.0 + d) - mixture_eval_at(fit.mixture, 1.0 + d));
    if (err <= 0.0) continue;
    const double x = std::log(d), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 2.7);
}

TEST_CASE("fit_pointwise recovers well-separated planted pairs") {
  SignedMixture truth;
  truth.positive.push_back({4.0, 1.2, 0.08, AtomKind::pair});
  truth.positive.push_back({2.5, 3.0, 0.15, AtomKind::pair});

  auto a_fn = [&](double w) { return mixture_eval_at(truth, w); };
  std::vector<ExtremumPoint> targets;
  for (const GaussianAtom& g : truth.positive) {
    const double peak = testutil::argmax_near(a_fn, g.omega_c, 0.2);
    targets.push_back(
        {peak, a_fn(peak), mixture_eval_at(truth, peak, 2), ExtremumKind::maximum});
  }
  const SampledAmplitude amp = testutil::sample_function(a_fn, 5.0, 512);
  const PointwiseFit fit = fit_pointwise(amp, targets, 1e-12, 500);
  REQUIRE(fit.mixture.positive.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(close(fit.mixture.positive[k].alpha, truth.positive[k].alpha, 1e-6));
    CHECK(close(fit.mixture.positive[k].omega_c, truth.positive[k].omega_c, 1e-6));
    CHECK(close(fit.mixture.positive[k].sigma, truth.positive[k].sigma, 1e-6));
  }
  CHECK(fit.diagnostics.sup_error < 1e-6);
}

TEST_CASE("guard failure keeps the previous triple and eventually drops the atom") {
  // second target is swamped by the first atom's tail: its A goes negative
  std::vector<SelectionTarget> targets{{1.0, 10.0, -36.0, false},
                                       {1.05, 1e-3, -0.01, false}};
  PointwiseConfig config;
  config.tol = 1e-12;
  config.max_iter = 50;
  const PointwiseFit fit = fit_pointwise_signed(targets, config);
  CHECK(fit.diagnostics.skip_counts[1] >= config.max_consecutive_skips);
  CHECK(fit.diagnostics.dropped[1]);
  CHECK_FALSE(fit.diagnostics.dropped[0]);
  CHECK(fit.mixture.positive.size() == 1);
}

TEST_CASE("signed fit handles negative minima by sign symmetry") {
  // pure negative bump: residual-style target
  SignedMixture truth;
  truth.negative.push_back({0.5, 2.0, 0.3, AtomKind::pair});
  auto a_fn = [&](double w) { return mixture_eval_at(truth, w); };

  const double valley = testutil::argmax_near([&](double w) { return -a_fn(w); }, 2.0, 0.2);
  std::vector<SelectionTarget> targets{
      {valley, a_fn(valley), mixture_eval_at(truth, valley, 2), false}};
  PointwiseConfig config;
  config.tol = 1e-13;
  config.max_iter = 300;
  const PointwiseFit fit = fit_pointwise_signed(targets, config);
  REQUIRE(fit.mixture.negative.size() == 1);
  CHECK(fit.mixture.positive.empty());
  CHECK(close(fit.mixture.negative[0].alpha, 0.5, 1e-6));
  CHECK(close(fit.mixture.negative[0].omega_c, 2.0, 1e-6));
  CHECK(close(fit.mixture.negative[0].sigma, 0.3, 1e-6));
}

TEST_CASE("signed fit with a center target") {
  SignedMixture truth;
  truth.center = GaussianAtom{2.0, 0.0, 0.5, AtomKind::center};
  truth.positive.push_back({1.5, 2.5, 0.2, AtomKind::pair});
  auto a_fn = [&](double w) { return mixture_eval_at(truth, w); };

  const double peak = testutil::argmax_near(a_fn, 2.5, 0.2);
  // second derivative of the mixture at 0 (even extension is automatic)
  std::vector<SelectionTarget> targets{
      {0.0, a_fn(0.0), mixture_eval_at(truth, 0.0, 2), true},
      {peak, a_fn(peak), mixture_eval_at(truth, peak, 2), false}};
  PointwiseConfig config;
  config.tol = 1e-13;
  config.max_iter = 300;
  const PointwiseFit fit = fit_pointwise_signed(targets, config);
  REQUIRE(fit.mixture.center.has_value());
  CHECK(close(fit.mixture.center->alpha, 2.0, 1e-7));
  CHECK(close(fit.mixture.center->sigma, 0.5, 1e-7));
  REQUIRE(fit.mixture.positive.size() == 1);
  CHECK(close(fit.mixture.positive[0].alpha, 1.5, 1e-7));
}
