#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "chirplet/csv_io.hpp"
#include "chirplet/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return CHIRPLET_CLI_PATH; }

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "chirplet_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(cli_path()) + " " + args + " >" + (work_dir() / "stdout.txt").string() +
      " 2>" + (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, double> read_report(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::map<std::string, double> out;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    const std::string key = line.substr(0, comma);
    const std::string val = line.substr(comma + 1);
    char* end = nullptr;
    const double v = std::strtod(val.c_str(), &end);
    if (end != val.c_str()) out[key] = v;
  }
  return out;
}

}  // namespace

TEST_CASE("cli: generate is deterministic for a fixed seed") {
  const fs::path dir = work_dir();
  const fs::path a = dir / "noise_a.csv";
  const fs::path b = dir / "noise_b.csv";
  REQUIRE(run_cli("generate --kind lolo-sin --output " + a.string() +
                  " --noise-sigma 0.05 --seed 7") == 0);
  REQUIRE(run_cli("generate --kind lolo-sin --output " + b.string() +
                  " --noise-sigma 0.05 --seed 7") == 0);
  CHECK(slurp(a) == slurp(b));

  const fs::path c = dir / "noise_c.csv";
  REQUIRE(run_cli("generate --kind lolo-sin --output " + c.string() +
                  " --noise-sigma 0.05 --seed 8") == 0);
  CHECK(slurp(a) != slurp(c));

  // seed is mandatory for noisy generators
  CHECK(run_cli("generate --kind lolo-sin --output " + c.string() + " --noise-sigma 0.05") ==
        2);
  // unknown generator name
  CHECK(run_cli("generate --kind bogus --output " + c.string()) == 2);
}

TEST_CASE("cli: lolo grid default matches the documented 512-point grid") {
  const fs::path sig = work_dir() / "lolo.csv";
  REQUIRE(run_cli("generate --kind lolo-cubic --output " + sig.string()) == 0);
  const chirplet::RealSignal s = chirplet::read_signal_csv(sig);
  CHECK(s.samples.size() == 512);
  CHECK(s.t_start == doctest::Approx(-5.12));
  CHECK(s.dt == doctest::Approx(0.02));
}

TEST_CASE("cli: academic decompose reports the published Q") {
  const fs::path dir = work_dir();
  const fs::path sig = dir / "academic.csv";
  REQUIRE(run_cli("generate --kind academic --output " + sig.string()) == 0);

  const fs::path out = dir / "academic_out";
  REQUIRE(run_cli("decompose --input " + sig.string() + " --output-dir " + out.string() +
                  " --method l2 --omega-max 4 --n-freq 1024 --max-levels 1") == 0);

  const auto report = read_report(out / "report.csv");
  REQUIRE(report.count("q_max_level_0"));
  CHECK(report.at("q_max_level_0") == doctest::Approx(390.9413).epsilon(5e-3));
  REQUIRE(fs::exists(out / "model.json"));
  REQUIRE(fs::exists(out / "ledger.json"));
  REQUIRE(fs::exists(out / "levels.csv"));

  const chirplet::ChirpletModel model =
      chirplet::model_from_json(chirplet::load_text(out / "model.json"));
  REQUIRE(model.atoms.size() == 1);
  CHECK(model.atoms[0].alpha == doctest::Approx(13.8189).epsilon(1e-2));
}

TEST_CASE("cli: zero signal decomposes to exit code 2") {
  const fs::path sig = work_dir() / "zero.csv";
  {
    std::ofstream out(sig);
    out << "t,f\n";
    for (int i = 0; i < 64; ++i) out << (0.1 * i) << ",0\n";
  }
  CHECK(run_cli("decompose --input " + sig.string() + " --output-dir " +
                (work_dir() / "zero_out").string()) == 2);
}

TEST_CASE("cli: synthesize/roundtrip on a decomposed model") {
  const fs::path dir = work_dir();
  const fs::path sig = dir / "rt_sig.csv";
  REQUIRE(run_cli("generate --kind lolo-cubic --output " + sig.string()) == 0);

  const fs::path out = dir / "rt_out";
  REQUIRE(run_cli("decompose --input " + sig.string() + " --output-dir " + out.string() +
                  " --method pointwise --omega-max 4 --n-freq 512 --max-levels 1") == 0);

  const fs::path report = dir / "rt_report.csv";
  const fs::path series = dir / "rt_series.csv";
  REQUIRE(run_cli("roundtrip --model " + (out / "model.json").string() + " --input " +
                  sig.string() + " --output " + report.string() + " --series " +
                  series.string() + " --omega-max 4 --n-freq 512") == 0);
  const auto metrics = read_report(report);
  REQUIRE(metrics.count("time_rel_error"));
  CHECK(metrics.at("time_rel_error") < 0.2);
  REQUIRE(metrics.count("freq_rel_error"));

  // series has one row per input sample plus the header
  std::ifstream in(series);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "t,f,f_model,abs_err");
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 512);

  const fs::path resynth = dir / "rt_resynth.csv";
  REQUIRE(run_cli("synthesize --model " + (out / "model.json").string() + " --output " +
                  resynth.string() + " --t-start -5.12 --dt 0.02 --n-samples 512") == 0);
  CHECK(chirplet::read_signal_csv(resynth).samples.size() == 512);
}

TEST_CASE("cli: noise monotonically degrades the roundtrip error") {
  const fs::path dir = work_dir();
  auto pipeline = [&](const std::string& tag, const std::string& noise) {
    const fs::path sig = dir / ("mono_" + tag + ".csv");
    REQUIRE(run_cli("generate --kind lolo-sin --output " + sig.string() + noise) == 0);
    const fs::path out = dir / ("mono_out_" + tag);
    REQUIRE(run_cli("decompose --input " + sig.string() + " --output-dir " + out.string() +
                    " --method pointwise --omega-max 4 --n-freq 512 --max-levels 1") == 0);
    const fs::path report = dir / ("mono_report_" + tag + ".csv");
    REQUIRE(run_cli("roundtrip --model " + (out / "model.json").string() + " --input " +
                    sig.string() + " --output " + report.string() +
                    " --omega-max 4 --n-freq 512") == 0);
    return read_report(report).at("time_rel_error");
  };
  const double clean = pipeline("clean", "");
  const double noisy = pipeline("noisy", " --noise-sigma 0.05 --seed 11");
  CHECK(noisy > clean);
}

TEST_CASE("cli: detrend exact polynomial and sidecar coefficients") {
  const fs::path dir = work_dir();
  const fs::path prices = dir / "prices.csv";
  {
    std::ofstream out(prices);
    out << "t,price\n";
    char buf[64];
    for (int i = 0; i < 256; ++i) {
      const double t = i;
      const double u = (t - 128.0) / 128.0;
      const double p = 5.0 + u - 2.0 * u * u + 0.5 * u * u * u - u * u * u * u +
                       0.25 * u * u * u * u * u;
      std::snprintf(buf, sizeof(buf), "%d,%.17g\n", i, p);
      out << buf;
    }
  }
  const fs::path detr = dir / "detrended.csv";
  REQUIRE(run_cli("detrend --input " + prices.string() + " --output " + detr.string() +
                  " --degree 5") == 0);
  const chirplet::TwoColumns cols = chirplet::read_two_column_csv(detr, "t", "f");
  for (double v : cols.second) CHECK(std::abs(v) <= 1e-8 * 5.0);
  CHECK(fs::exists(detr.string() + ".coefficients.json"));

  // degree larger than the sample count fails cleanly
  const fs::path tiny = dir / "tiny.csv";
  {
    std::ofstream out(tiny);
    out << "t,price\n0,1\n1,2\n2,3\n";
  }
  CHECK(run_cli("detrend --input " + tiny.string() + " --output " + detr.string() +
                " --degree 5") == 2);
}

TEST_CASE("cli: analyze then extrema finds the academic maxima") {
  const fs::path dir = work_dir();
  const fs::path sig = dir / "ana_sig.csv";
  REQUIRE(run_cli("generate --kind academic --output " + sig.string()) == 0);
  const fs::path spec = dir / "ana_spec.csv";
  REQUIRE(run_cli("analyze --input " + sig.string() + " --output " + spec.string() +
                  " --omega-max 4 --n-freq 1024") == 0);
  const fs::path ext = dir / "ana_extrema.csv";
  REQUIRE(run_cli("extrema --input " + spec.string() + " --output " + ext.string()) == 0);

  std::ifstream in(ext);
  std::string line;
  std::getline(in, line);
  CHECK(line == "location,value,second_deriv,kind");
  bool found_peak = false;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string loc, val, sd, kind;
    std::getline(ss, loc, ',');
    std::getline(ss, val, ',');
    std::getline(ss, sd, ',');
    std::getline(ss, kind, ',');
    if (kind == "max" && std::abs(std::strtod(loc.c_str(), nullptr) - 1.0) < 0.01) {
      found_peak = true;
      CHECK(std::strtod(val.c_str(), nullptr) == doctest::Approx(13.5).epsilon(1e-2));
      CHECK(std::strtod(sd.c_str(), nullptr) == doctest::Approx(-36.0).epsilon(0.05));
    }
  }
  CHECK(found_peak);
}
