#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "chirplet/csv_io.hpp"
#include "chirplet/detrend.hpp"
#include "chirplet/generators.hpp"
#include "chirplet/json_io.hpp"
#include "chirplet/numerics.hpp"
#include "test_helpers.hpp"

using namespace chirplet;
using testutil::close;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "chirplet_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("trapezoid and quartic stencils") {
  std::vector<double> quad(101);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const double x = 0.01 * double(i);
    quad[i] = x * x;
  }
  CHECK(close(trapezoid(quad, 0.01), 1.0 / 3.0, 1e-4));

  // degree-4 polynomial is reproduced exactly by the quartic interpolant
  auto poly = [](double x) { return 1.0 + x - 2.0 * x * x + 0.5 * x * x * x + x * x * x * x; };
  auto d2 = [](double x) { return -4.0 + 3.0 * x + 12.0 * x * x; };
  const double h = 0.1;
  double y[5];
  for (int k = -2; k <= 2; ++k) y[k + 2] = poly(k * h);
  for (double x : {0.0, 0.05, -0.13}) {
    CHECK(close(quartic_value(y, h, x), poly(x), 1e-12));
    CHECK(close(quartic_second_derivative(y, h, x), d2(x), 1e-10));
  }
}

TEST_CASE("gaussian noise stream is deterministic per seed") {
  GaussianNoise a(42), b(42), c(43);
  bool differs = false;
  double mean = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double va = a.next();
    CHECK(va == b.next());
    if (va != c.next()) differs = true;
    mean += va;
  }
  CHECK(differs);
  CHECK(std::abs(mean / 1000.0) < 0.15);
}

TEST_CASE("polynomial_detrend: exact fits and mean-zero residual") {
  const std::size_t n = 400;
  std::vector<double> t(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = 0.25 * double(i);
    const double u = t[i] / 100.0;
    y[i] = 3.0 - 2.0 * u + 0.7 * u * u - u * u * u + 0.2 * u * u * u * u + 0.05 * std::pow(u, 5);
  }
  const DetrendResult fit = polynomial_detrend(t, y, 5);
  double max_rel = 0.0, ymax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_rel = std::max(max_rel, std::abs(fit.residual[i]));
    ymax = std::max(ymax, std::abs(y[i]));
  }
  CHECK(max_rel <= 1e-8 * ymax);

  // constant series, degree 1 -> zero residual
  std::vector<double> flat(n, 7.5);
  const DetrendResult cfit = polynomial_detrend(t, flat, 1);
  for (double r : cfit.residual) CHECK(std::abs(r) <= 1e-10);

  // residual mean vanishes for any least-squares fit with a constant term
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> wiggly(n);
  for (std::size_t i = 0; i < n; ++i) wiggly[i] = std::sin(0.1 * t[i]) + noise(rng);
  const DetrendResult wfit = polynomial_detrend(t, wiggly, 6);
  double mean = 0.0;
  for (double r : wfit.residual) mean += r;
  CHECK(std::abs(mean / double(n)) <= 1e-9);

  CHECK_THROWS_AS(polynomial_detrend(t, y, 0), std::invalid_argument);
  CHECK_THROWS_AS(polynomial_detrend(t, y, 11), std::invalid_argument);
  std::vector<double> three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(polynomial_detrend(three, three, 5), std::invalid_argument);
}

TEST_CASE("polynomial_detrend keeps a planted oscillation") {
  const std::size_t n = 1024;
  std::vector<double> t(n), chirp(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = double(i);
    const double u = (t[i] - 512.0) / 512.0;
    chirp[i] = std::sin(0.08 * t[i] + 2e-5 * t[i] * t[i]) * std::exp(-u * u);
    y[i] = 100.0 + 30.0 * u - 55.0 * u * u + 20.0 * u * u * u + 8.0 * std::pow(u, 5) + chirp[i];
  }
  const DetrendResult fit = polynomial_detrend(t, y, 5);
  // Pearson correlation between the residual and the planted chirp
  double mr = 0.0, mc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mr += fit.residual[i];
    mc += chirp[i];
  }
  mr /= double(n);
  mc /= double(n);
  double num = 0.0, dr = 0.0, dc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (fit.residual[i] - mr) * (chirp[i] - mc);
    dr += (fit.residual[i] - mr) * (fit.residual[i] - mr);
    dc += (chirp[i] - mc) * (chirp[i] - mc);
  }
  CHECK(num / std::sqrt(dr * dc) >= 0.95);
}

TEST_CASE("signal CSV round trip and validation") {
  RealSignal sig;
  sig.t_start = -1.25;
  sig.dt = 0.05;
  sig.samples = {0.5, -1.75, 2.25, 0.0, 1e-17, -3.5};
  const fs::path path = temp_file("sig.csv");
  write_signal_csv(path, sig);
  const RealSignal back = read_signal_csv(path);
  CHECK(back.t_start == sig.t_start);
  // dt is reconstructed as t[1] - t[0], exact only up to one rounding
  CHECK(back.dt == doctest::Approx(sig.dt).epsilon(1e-14));
  CHECK(back.samples == sig.samples);

  // non-uniform grid is rejected
  std::FILE* f = std::fopen(temp_file("bad.csv").c_str(), "w");
  std::fputs("t,f\n0,1\n1,2\n3,4\n", f);
  std::fclose(f);
  CHECK_THROWS_AS(read_signal_csv(temp_file("bad.csv")), std::invalid_argument);
  CHECK_THROWS_AS(read_signal_csv(temp_file("missing.csv")), std::invalid_argument);
}

TEST_CASE("spectrum CSV round trip preserves the polar data") {
  const SampledSpectrum spec = sample_spectrum(
      [](double w) { return std::exp(-w * w / 2.0) + 0.2; },
      [](double w) { return 0.3 * w; }, 3.0, 64);
  const fs::path path = temp_file("spec.csv");
  write_spectrum_csv(path, spec);
  const SampledSpectrum back = read_spectrum_csv(path);
  REQUIRE(back.size() == spec.size());
  CHECK(back.omega_max == spec.omega_max);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    CHECK(back.h_even[i] == spec.h_even[i]);
    CHECK(back.h_odd[i] == spec.h_odd[i]);
    CHECK(close(back.amplitude[i], spec.amplitude[i], 1e-15));
    if (std::isfinite(spec.phase[i])) CHECK(close(back.phase[i], spec.phase[i], 1e-12, 1e-12));
  }
}

TEST_CASE("mixture and model JSON round trips") {
  SignedMixture mix;
  mix.center = GaussianAtom{-0.5, 0.0, 0.8, AtomKind::center};
  mix.positive.push_back({2.0, 1.0, 0.25, AtomKind::pair});
  mix.negative.push_back({0.75, 2.5, 0.4, AtomKind::pair});
  const SignedMixture mix2 = mixture_from_json(mixture_to_json(mix));
  REQUIRE(mix2.center.has_value());
  CHECK(mix2.center->alpha == mix.center->alpha);
  CHECK(mix2.center->kind == AtomKind::center);
  REQUIRE(mix2.positive.size() == 1);
  CHECK(mix2.positive[0].omega_c == 1.0);
  REQUIRE(mix2.negative.size() == 1);
  CHECK(mix2.negative[0].alpha == 0.75);

  ChirpletModel model;
  model.center = CenterChirp{1.5, 0.9, -0.2};
  model.atoms.push_back({2.0, 1.0, 0.25, 0.1, 0.5, -0.3});
  const ChirpletModel model2 = model_from_json(model_to_json(model));
  REQUIRE(model2.center.has_value());
  CHECK(model2.center->t0 == -0.2);
  REQUIRE(model2.atoms.size() == 1);
  CHECK(model2.atoms[0].kappa == -0.3);
  CHECK(model2.parameter_count() == 9);
}

TEST_CASE("diagnostic CSV writers produce the documented headers") {
  PointwiseDiagnostics diag;
  diag.history = {{{13.5, 1.0, 0.375}}, {{13.45, 1.007, 0.3595}}};
  const fs::path pw = temp_file("pw_history.csv");
  write_pointwise_history_csv(pw, diag);
  {
    std::ifstream in(pw);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,atom,alpha,omega,sigma");
    int rows = 0;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 2);
  }

  const std::vector<L2HistoryRow> history{{0, 390.0, 1e-3, 12.5}, {1, 390.9, 1.2e-3, 3.1}};
  const fs::path l2 = temp_file("l2_history.csv");
  write_l2_history_csv(l2, history);
  {
    std::ifstream in(l2);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,q,step,grad_norm");
  }

  RefinementLedger ledger;
  ledger.initial_sq_norm = 395.0;
  RefinementLevel lv;
  lv.mixture.positive.push_back({13.8, 0.9, 0.29, AtomKind::pair});
  lv.q_max = 390.9;
  lv.residual_sq_norm = 4.1;
  lv.p_n = 1;
  ledger.levels.push_back(lv);
  const fs::path lc = temp_file("levels.csv");
  write_ledger_csv(lc, ledger);
  {
    std::ifstream in(lc);
    std::string line;
    std::getline(in, line);
    CHECK(line == "level,atoms,p_n,q_n,q_max,residual_sq_norm");
    std::getline(in, line);
    CHECK(line.substr(0, 4) == "0,1,");
  }
}

TEST_CASE("ledger JSON round trip") {
  RefinementLedger ledger;
  ledger.method = FitMethod::l2;
  ledger.eps_stop = 1e-4;
  ledger.initial_sq_norm = 395.0;
  ledger.stop = StopReason::max_levels;
  RefinementLevel lv;
  lv.mixture.positive.push_back({13.8, 0.9, 0.29, AtomKind::pair});
  lv.q_max = 390.9;
  lv.residual_sq_norm = 4.1;
  lv.p_n = 1;
  ledger.levels.push_back(lv);

  const RefinementLedger back = ledger_from_json(ledger_to_json(ledger));
  CHECK(back.method == FitMethod::l2);
  CHECK(back.stop == StopReason::max_levels);
  REQUIRE(back.levels.size() == 1);
  CHECK(back.levels[0].q_max == 390.9);
  CHECK(back.levels[0].mixture.positive.size() == 1);
}
