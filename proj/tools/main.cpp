// chirplet: command-line front end for the Gaussian chirplet decomposition
// library. Subcommands: generate, analyze, decompose, synthesize, roundtrip,
// detrend, extrema.
//
// Exit codes: 0 success (possibly with warnings in the report), 2 input or
// domain error, 1 unexpected internal error. Non-convergence of a fit is a
// warning, never a failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chirplet/chirp_model.hpp"
#include "chirplet/csv_io.hpp"
#include "chirplet/detrend.hpp"
#include "chirplet/errors.hpp"
#include "chirplet/extrema.hpp"
#include "chirplet/generators.hpp"
#include "chirplet/hierarchy.hpp"
#include "chirplet/json_io.hpp"
#include "chirplet/spectrum.hpp"

namespace fs = std::filesystem;
using namespace chirplet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct KeyValueReport {
  std::vector<std::pair<std::string, std::string>> rows;

  void add(const std::string& key, const std::string& value) { rows.emplace_back(key, value); }
  void add(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    rows.emplace_back(key, buf);
  }
  void add(const std::string& key, long long value) {
    rows.emplace_back(key, std::to_string(value));
  }

  void write(const fs::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("report: cannot write " + path.string());
    out << "metric,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
  }
};

double relative_l2(std::span<const double> a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind;
  std::string output;
  double noise_sigma = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_start, dt;
  std::optional<std::size_t> n_samples;
  std::optional<double> band;
  std::optional<std::size_t> n_quad;
};

int run_generate(const GenerateArgs& args) {
  const std::optional<GeneratorKind> kind = generator_from_name(args.kind);
  if (!kind) {
    std::cerr << "generate: unknown generator '" << args.kind
              << "' (expected academic, lolo-cubic or lolo-sin)\n";
    return kExitInput;
  }
  if (args.noise_sigma > 0.0 && !args.seed) {
    std::cerr << "generate: --seed is mandatory when --noise-sigma > 0\n";
    return kExitInput;
  }

  GeneratorOptions opts = default_generator_options(*kind);
  if (args.t_start) opts.grid.t_start = *args.t_start;
  if (args.dt) opts.grid.dt = *args.dt;
  if (args.n_samples) opts.grid.n = *args.n_samples;
  if (args.band) opts.omega_band = *args.band;
  if (args.n_quad) opts.n_quad = *args.n_quad;
  opts.noise_sigma = args.noise_sigma;
  opts.seed = args.seed.value_or(0);

  write_signal_csv(args.output, generate_signal(*kind, opts));
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string output;
  double omega_max = 4.0;
  std::size_t n_freq = 1024;
  double phase_floor_rel = kDefaultPhaseFloorRel;
};

int run_analyze(const AnalyzeArgs& args) {
  const RealSignal sig = read_signal_csv(args.input);
  const SampledSpectrum spec = compute_spectrum(sig, args.omega_max, args.n_freq,
                                                args.phase_floor_rel);
  if (spec.boundary_warning)
    std::cerr << "analyze: warning: amplitude at +-omega_max above 1e-3 of its peak "
                 "(band limit too small?)\n";
  write_spectrum_csv(args.output, spec);
  return kExitOk;
}

// --------------------------------------------------------------- decompose

struct DecomposeArgs {
  std::string input;
  std::string output_dir;
  std::string method = "l2";
  double omega_max = 4.0;
  std::size_t n_freq = 1024;
  double eps_stop = 0.0;
  int max_levels = 8;
  double prominence_rel = kDefaultProminenceRel;
  double phase_floor_rel = kDefaultPhaseFloorRel;
};

// Spectrum of the whole level stack (level-0 model plus signed refinements).
std::vector<std::complex<double>> stack_spectrum(
    const std::vector<SignedChirpletModels>& stack, const SampledSpectrum& spec) {
  std::vector<double> omegas(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) omegas[i] = spec.omega_at(i);
  std::vector<std::complex<double>> acc(spec.size(), {0.0, 0.0});
  for (const SignedChirpletModels& level : stack) {
    const auto plus = model_spectrum(level.added, omegas);
    const auto minus = model_spectrum(level.subtracted, omegas);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += plus[i] - minus[i];
  }
  return acc;
}

int run_decompose(const DecomposeArgs& args) {
  const RealSignal sig = read_signal_csv(args.input);
  const SampledSpectrum spec = compute_spectrum(sig, args.omega_max, args.n_freq,
                                                args.phase_floor_rel);
  if (*std::max_element(spec.amplitude.begin(), spec.amplitude.end()) == 0.0)
    throw degenerate_input_error("decompose: degenerate spectrum (zero signal)");

  HierarchyConfig config;
  config.method = args.method == "pointwise" ? FitMethod::pointwise : FitMethod::l2;
  config.eps_stop = args.eps_stop;
  config.max_levels = args.max_levels;
  config.prominence_rel = args.prominence_rel;

  const RefinementLedger ledger = refine_until(spec.amplitude_samples(), config);

  fs::create_directories(args.output_dir);
  const fs::path dir = args.output_dir;
  save_text(dir / "ledger.json", ledger_to_json(ledger));
  write_ledger_csv(dir / "levels.csv", ledger);

  KeyValueReport report;
  report.add("method", args.method);
  report.add("levels", static_cast<long long>(ledger.levels.size()));
  report.add("initial_sq_norm", ledger.initial_sq_norm);
  report.add("boundary_warning", static_cast<long long>(spec.boundary_warning ? 1 : 0));

  bool all_converged = true;
  double prev = ledger.initial_sq_norm;
  for (std::size_t i = 0; i < ledger.levels.size(); ++i) {
    const RefinementLevel& lv = ledger.levels[i];
    report.add("q_max_level_" + std::to_string(i), lv.q_max);
    report.add("residual_sq_norm_level_" + std::to_string(i), lv.residual_sq_norm);
    report.add("atoms_level_" + std::to_string(i),
               static_cast<long long>(lv.mixture.atom_count()));
    all_converged = all_converged && lv.fit_converged;
    prev = lv.residual_sq_norm;
  }
  report.add("warning_not_converged", static_cast<long long>(all_converged ? 0 : 1));

  // Level-0 chirplet model (the canonical artifact) and the signed stack for
  // the roundtrip check. Levels whose atoms sit in phase-invalid regions are
  // skipped with a warning.
  std::vector<SignedChirpletModels> stack;
  int skipped_levels = 0;
  for (const RefinementLevel& lv : ledger.levels) {
    try {
      stack.push_back(build_model_signed(lv.mixture, spec.phase, spec.omega_max));
    } catch (const degenerate_input_error&) {
      ++skipped_levels;
    }
  }
  report.add("warning_phase_skipped_levels", static_cast<long long>(skipped_levels));
  if (stack.empty()) {
    std::cerr << "decompose: no level could be converted to a chirplet model\n";
    return kExitInput;
  }
  save_text(dir / "model.json", model_to_json(stack.front().added));
  if (!stack.front().subtracted.atoms.empty())
    std::cerr << "decompose: warning: level-0 fit produced negative atoms\n";

  report.add("roundtrip_error_freq", roundtrip_error(spec, stack_spectrum(stack, spec)));
  report.write(dir / "report.csv");
  return kExitOk;
}

// --------------------------------------------------------------- synthesize

struct SynthesizeArgs {
  std::string model;
  std::string output;
  double t_start = -10.0;
  double dt = 0.01;
  std::size_t n_samples = 2000;
};

int run_synthesize(const SynthesizeArgs& args) {
  const ChirpletModel model = model_from_json(load_text(args.model));
  const TimeGrid grid{args.t_start, args.dt, args.n_samples};
  write_signal_csv(args.output, synthesize_chirps(model, grid));
  return kExitOk;
}

// ---------------------------------------------------------------- roundtrip

struct RoundtripArgs {
  std::string model;
  std::string input;
  std::string output;
  std::string series;
  double omega_max = 4.0;
  std::size_t n_freq = 1024;
};

int run_roundtrip(const RoundtripArgs& args) {
  const ChirpletModel model = model_from_json(load_text(args.model));
  const RealSignal sig = read_signal_csv(args.input);

  const TimeGrid grid{sig.t_start, sig.dt, sig.samples.size()};
  const RealSignal synth = synthesize_chirps(model, grid);

  const SampledSpectrum spec = compute_spectrum(sig, args.omega_max, args.n_freq);
  std::vector<double> omegas(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) omegas[i] = spec.omega_at(i);
  const double freq_err = roundtrip_error(spec, model_spectrum(model, omegas));
  const double time_err = relative_l2(sig.samples, synth.samples);

  double max_abs = 0.0;
  for (std::size_t i = 0; i < sig.samples.size(); ++i)
    max_abs = std::max(max_abs, std::abs(sig.samples[i] - synth.samples[i]));

  KeyValueReport report;
  report.add("time_rel_error", time_err);
  report.add("freq_rel_error", freq_err);
  report.add("max_abs_error", max_abs);
  report.write(args.output);

  if (!args.series.empty()) {
    std::ofstream out(args.series);
    if (!out) throw std::invalid_argument("roundtrip: cannot write " + args.series);
    out << "t,f,f_model,abs_err\n";
    char buf[200];
    for (std::size_t i = 0; i < sig.samples.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", sig.time_at(i),
                    sig.samples[i], synth.samples[i],
                    std::abs(sig.samples[i] - synth.samples[i]));
      out << buf;
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------ detrend

struct DetrendArgs {
  std::string input;
  std::string output;
  std::string coefficients;
  int degree = 5;
};

int run_detrend(const DetrendArgs& args) {
  const TwoColumns cols = read_two_column_csv(args.input, "t", "price");
  const DetrendResult fit = polynomial_detrend(cols.first, cols.second, args.degree);
  write_two_column_csv(args.output, "t", "f", cols.first, fit.residual);
  const std::string sidecar =
      args.coefficients.empty() ? args.output + ".coefficients.json" : args.coefficients;
  save_text(sidecar, detrend_to_json(fit));
  return kExitOk;
}

// ------------------------------------------------------------------ extrema

struct ExtremaArgs {
  std::string input;
  std::string output;
  double prominence_rel = kDefaultProminenceRel;
};

int run_extrema(const ExtremaArgs& args) {
  const SampledSpectrum spec = read_spectrum_csv(args.input);
  double max_amp = 0.0;
  for (double a : spec.amplitude) max_amp = std::max(max_amp, a);
  const SampledAmplitude amp = spec.amplitude_samples();
  const ExtremaResult ex =
      find_extrema(amp.half(), spec.omega_max, args.prominence_rel * max_amp);
  write_extrema_csv(args.output, ex);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian chirplet decomposition of real band-limited signals"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* cmd_gen = app.add_subcommand("generate", "Generate a built-in experiment signal");
  cmd_gen->add_option("--kind", gen.kind, "Generator: academic, lolo-cubic, lolo-sin")
      ->required();
  cmd_gen->add_option("--output", gen.output, "Output signal CSV (t,f)")->required();
  cmd_gen->add_option("--noise-sigma", gen.noise_sigma,
                      "White-noise level relative to signal RMS");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed (mandatory when --noise-sigma > 0)");
  cmd_gen->add_option("--t-start", gen.t_start, "Override the default time-grid start");
  cmd_gen->add_option("--dt", gen.dt, "Override the default time step");
  cmd_gen->add_option("--n-samples", gen.n_samples, "Override the default sample count");
  cmd_gen->add_option("--band", gen.band, "Synthesis frequency band");
  cmd_gen->add_option("--n-quad", gen.n_quad, "Synthesis quadrature points");

  AnalyzeArgs ana;
  CLI::App* cmd_ana = app.add_subcommand("analyze", "Compute the sampled spectrum of a signal");
  cmd_ana->add_option("--input", ana.input, "Input signal CSV (t,f)")->required();
  cmd_ana->add_option("--output", ana.output, "Output spectrum CSV")->required();
  cmd_ana->add_option("--omega-max", ana.omega_max, "Frequency grid half-width");
  cmd_ana->add_option("--n-freq", ana.n_freq, "Frequency half-grid count N");
  cmd_ana->add_option("--phase-floor-rel", ana.phase_floor_rel,
                      "Phase validity floor relative to max amplitude");

  DecomposeArgs dec;
  CLI::App* cmd_dec =
      app.add_subcommand("decompose", "Hierarchical Gaussian-chirp decomposition");
  cmd_dec->add_option("--input", dec.input, "Input signal CSV (t,f)")->required();
  cmd_dec->add_option("--output-dir", dec.output_dir, "Output directory")->required();
  cmd_dec->add_option("--method", dec.method, "Fit method: pointwise or l2")
      ->check(CLI::IsMember({"pointwise", "l2"}));
  cmd_dec->add_option("--omega-max", dec.omega_max, "Frequency grid half-width");
  cmd_dec->add_option("--n-freq", dec.n_freq, "Frequency half-grid count N");
  cmd_dec->add_option("--eps-stop", dec.eps_stop, "Stopping tolerance (0 = method default)");
  cmd_dec->add_option("--max-levels", dec.max_levels, "Maximum refinement levels");
  cmd_dec->add_option("--min-prominence-rel", dec.prominence_rel,
                      "Extrema prominence floor relative to max |residual|");
  cmd_dec->add_option("--phase-floor-rel", dec.phase_floor_rel,
                      "Phase validity floor relative to max amplitude");

  SynthesizeArgs syn;
  CLI::App* cmd_syn = app.add_subcommand("synthesize", "Synthesize a chirplet model in time");
  cmd_syn->add_option("--model", syn.model, "Chirplet model JSON")->required();
  cmd_syn->add_option("--output", syn.output, "Output signal CSV")->required();
  cmd_syn->add_option("--t-start", syn.t_start, "Time grid start");
  cmd_syn->add_option("--dt", syn.dt, "Time step");
  cmd_syn->add_option("--n-samples", syn.n_samples, "Sample count");

  RoundtripArgs rt;
  CLI::App* cmd_rt = app.add_subcommand("roundtrip", "Compare a model against a signal");
  cmd_rt->add_option("--model", rt.model, "Chirplet model JSON")->required();
  cmd_rt->add_option("--input", rt.input, "Original signal CSV")->required();
  cmd_rt->add_option("--output", rt.output, "Report CSV (metric,value)")->required();
  cmd_rt->add_option("--series", rt.series, "Optional error-series CSV (t,f,f_model,abs_err)");
  cmd_rt->add_option("--omega-max", rt.omega_max, "Frequency grid half-width");
  cmd_rt->add_option("--n-freq", rt.n_freq, "Frequency half-grid count N");

  DetrendArgs det;
  CLI::App* cmd_det = app.add_subcommand("detrend", "Subtract a least-squares polynomial");
  cmd_det->add_option("--input", det.input, "Input CSV (t,price)")->required();
  cmd_det->add_option("--output", det.output, "Output detrended CSV (t,f)")->required();
  cmd_det->add_option("--degree", det.degree, "Polynomial degree (1..10)");
  cmd_det->add_option("--coefficients", det.coefficients,
                      "Coefficient sidecar JSON (default <output>.coefficients.json)");

  ExtremaArgs ext;
  CLI::App* cmd_ext = app.add_subcommand("extrema", "Report amplitude extrema of a spectrum");
  cmd_ext->add_option("--input", ext.input, "Input spectrum CSV")->required();
  cmd_ext->add_option("--output", ext.output, "Output extrema CSV")->required();
  cmd_ext->add_option("--min-prominence-rel", ext.prominence_rel,
                      "Prominence floor relative to max amplitude");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_ana->parsed()) return run_analyze(ana);
    if (cmd_dec->parsed()) return run_decompose(dec);
    if (cmd_syn->parsed()) return run_synthesize(syn);
    if (cmd_rt->parsed()) return run_roundtrip(rt);
    if (cmd_det->parsed()) return run_detrend(det);
    if (cmd_ext->parsed()) return run_extrema(ext);
  } catch (const degenerate_input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
