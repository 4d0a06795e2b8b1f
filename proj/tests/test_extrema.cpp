#include <doctest.h>

#include <cmath>
#include <random>

#include "chirplet/errors.hpp"
#include "chirplet/extrema.hpp"
#include "chirplet/gaussian_mixture.hpp"
#include "chirplet/generators.hpp"
#include "test_helpers.hpp"

using namespace chirplet;
using testutil::close;

TEST_CASE("find_extrema on the academic amplitude") {
  const SampledAmplitude amp = testutil::academic_samples(2.0, 1024);
  const ExtremaResult ex = find_extrema(amp.half(), 2.0, 1e-3 * 13.5);

  REQUIRE(ex.interior.size() == 1);
  const ExtremumPoint& p = ex.interior.front();
  CHECK(p.kind == ExtremumKind::maximum);
  CHECK(close(p.location, 1.0, 1e-5, 1e-5));
  CHECK(close(p.value, 13.5, 1e-6));
  CHECK(close(p.second_deriv, -36.0, 1e-3));
  CHECK(ex.origin == ExtremumKind::minimum);
  CHECK(ex.origin_value == doctest::Approx(8.0));
}

TEST_CASE("find_extrema: parabolic refinement of an off-grid Gaussian peak") {
  const double omega_max = 4.0;
  const std::size_t n = 256;
  const GaussianAtom g{1.0, 2.0, 0.25, AtomKind::pair};
  const SampledAmplitude amp = testutil::sample_function(
      [&](double w) { return eval_atom(g, w, 0); }, omega_max, n);

  const ExtremaResult ex = find_extrema(amp.half(), omega_max, 1e-3);
  REQUIRE(ex.interior.size() == 1);
  const double truth =
      testutil::argmax_near([&](double w) { return eval_atom(g, w, 0); }, 2.0, 0.1);
  CHECK(std::abs(ex.interior[0].location - truth) <= amp.step());
}

TEST_CASE("find_extrema: monotone input has no interior extrema, origin is a max") {
  std::vector<double> vals(64);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::exp(-0.1 * double(i));
  const ExtremaResult ex = find_extrema(vals, 2.0, 0.0);
  CHECK(ex.interior.empty());
  CHECK(ex.origin == ExtremumKind::maximum);
}

TEST_CASE("find_extrema: constant input is degenerate") {
  std::vector<double> vals(64, 3.0);
  CHECK_THROWS_AS(find_extrema(vals, 2.0, 0.0), degenerate_input_error);
}

TEST_CASE("find_extrema: plateau reports its midpoint once") {
  std::vector<double> vals(21, 0.0);
  for (std::size_t i = 0; i < 8; ++i) vals[i] = double(i);
  for (std::size_t i = 8; i < 12; ++i) vals[i] = 8.0;  // flat top
  for (std::size_t i = 12; i < 21; ++i) vals[i] = 8.0 - double(i - 11);
  const ExtremaResult ex = find_extrema(vals, 2.0, 0.0);
  REQUIRE(ex.interior.size() == 1);
  CHECK(ex.interior[0].kind == ExtremumKind::maximum);
  // midpoint of the flat run (indices 8..11 -> 9 or 10 of 20 steps)
  CHECK(ex.interior[0].location >= 2.0 * 8.0 / 20.0);
  CHECK(ex.interior[0].location <= 2.0 * 12.0 / 20.0);
}

TEST_CASE("find_extrema: prominence filtering drops noise wiggles") {
  // narrow bump plus a ripple that only wins in the flat tails
  const std::size_t n = 512;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = 4.0 * double(i) / double(n);
    vals[i] = std::exp(-4.0 * (w - 2.0) * (w - 2.0)) + 1e-4 * std::sin(40.0 * w);
  }
  const ExtremaResult all = find_extrema(vals, 4.0, 0.0);
  const ExtremaResult filtered = find_extrema(vals, 4.0, 1e-3);
  CHECK(all.interior.size() > 3);
  int maxima = 0;
  for (const auto& p : filtered.interior)
    if (p.kind == ExtremumKind::maximum) ++maxima;
  CHECK(maxima == 1);
}

TEST_CASE("find_extrema: maxima and minima alternate and match their curvature sign") {
  const std::size_t n = 1024;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = 6.0 * double(i) / double(n);
    vals[i] = std::sin(3.0 * w) * std::exp(-0.1 * w);
  }
  const ExtremaResult ex = find_extrema(vals, 6.0, 1e-3);
  REQUIRE(ex.interior.size() >= 4);
  for (std::size_t i = 0; i < ex.interior.size(); ++i) {
    const ExtremumPoint& p = ex.interior[i];
    if (p.kind == ExtremumKind::maximum) CHECK(p.second_deriv < 0.0);
    if (p.kind == ExtremumKind::minimum) CHECK(p.second_deriv > 0.0);
    if (i > 0) CHECK(ex.interior[i].kind != ex.interior[i - 1].kind);
  }
}

TEST_CASE("find_extrema: doubling the grid moves locations by less than a coarse step") {
  auto f = [](double w) { return two_bump_amplitude(w); };
  const SampledAmplitude coarse = testutil::sample_function(f, 4.0, 256);
  const SampledAmplitude fine = testutil::sample_function(f, 4.0, 512);
  const ExtremaResult ec = find_extrema(coarse.half(), 4.0, 1e-4);
  const ExtremaResult ef = find_extrema(fine.half(), 4.0, 1e-4);
  REQUIRE(ec.interior.size() == ef.interior.size());
  for (std::size_t i = 0; i < ec.interior.size(); ++i)
    CHECK(std::abs(ec.interior[i].location - ef.interior[i].location) < coarse.step());
}

TEST_CASE("second_derivative: exact for quadratics, matches the academic curvature") {
  const std::size_t n = 200;
  std::vector<double> vals(n + 1);
  const double omega_max = 2.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = omega_max * double(i) / double(n);
    vals[i] = w * w;
  }
  for (std::size_t idx : {2ul, 57ul, 100ul, 198ul})
    CHECK(close(second_derivative(vals, omega_max, idx), 2.0, 1e-8));
  CHECK_THROWS_AS(second_derivative(vals, omega_max, std::size_t{1}), std::invalid_argument);
  CHECK_THROWS_AS(second_derivative(vals, omega_max, std::size_t{199}), std::invalid_argument);

  const SampledAmplitude amp = testutil::academic_samples(2.0, 1024);
  std::vector<double> half(amp.half().begin(), amp.half().end());
  CHECK(close(second_derivative(half, 2.0, 1.0), -36.0, 1e-6));
}

TEST_CASE("second_derivative at the two-bump maximum matches a dense-grid oracle") {
  auto f = [](double w) { return two_bump_amplitude(w); };
  const SampledAmplitude coarse = testutil::sample_function(f, 4.0, 1024);
  const SampledAmplitude dense = testutil::sample_function(f, 4.0, 16384);
  std::vector<double> ch(coarse.half().begin(), coarse.half().end());
  std::vector<double> dh(dense.half().begin(), dense.half().end());

  const double peak = testutil::argmax_near(f, 1.0, 0.3);
  const double sd_coarse = second_derivative(ch, 4.0, peak);
  const double sd_dense = second_derivative(dh, 4.0, peak);
  CHECK(close(sd_coarse, sd_dense, 1e-3));
}
