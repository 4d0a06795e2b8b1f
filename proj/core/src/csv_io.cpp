#include "chirplet/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chirplet {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_number(const std::string& cell, const std::filesystem::path& path) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin)
    throw std::invalid_argument("csv: non-numeric cell '" + cell + "' in " + path.string());
  return v;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("csv: cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("csv: cannot write " + path.string());
  return out;
}

}  // namespace

TwoColumns read_two_column_csv(const std::filesystem::path& path,
                               const std::string& col_a, const std::string& col_b) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csv: empty file " + path.string());
  const auto header = split_line(line);
  if (header.size() != 2 || header[0] != col_a || header[1] != col_b)
    throw std::invalid_argument("csv: expected header '" + col_a + "," + col_b + "' in " +
                                path.string());
  TwoColumns cols;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 2)
      throw std::invalid_argument("csv: malformed row in " + path.string());
    cols.first.push_back(parse_number(cells[0], path));
    cols.second.push_back(parse_number(cells[1], path));
  }
  return cols;
}

void write_two_column_csv(const std::filesystem::path& path, const std::string& col_a,
                          const std::string& col_b, std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("csv: column size mismatch");
  std::ofstream out = open_for_write(path);
  out << col_a << ',' << col_b << '\n';
  for (std::size_t i = 0; i < a.size(); ++i)
    out << fmt(a[i]) << ',' << fmt(b[i]) << '\n';
}

RealSignal read_signal_csv(const std::filesystem::path& path) {
  const TwoColumns cols = read_two_column_csv(path, "t", "f");
  const std::vector<double>& t = cols.first;
  if (t.size() < 2) throw std::invalid_argument("signal csv: need at least two samples");

  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw std::invalid_argument("signal csv: t must be strictly increasing");
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double step = t[i] - t[i - 1];
    if (std::abs(step - dt) > 1e-6 * std::abs(dt))
      throw std::invalid_argument("signal csv: t must be uniformly spaced");
  }
  RealSignal sig;
  sig.t_start = t[0];
  sig.dt = dt;
  sig.samples = cols.second;
  return sig;
}

void write_signal_csv(const std::filesystem::path& path, const RealSignal& signal) {
  std::ofstream out = open_for_write(path);
  out << "t,f\n";
  for (std::size_t i = 0; i < signal.samples.size(); ++i)
    out << fmt(signal.time_at(i)) << ',' << fmt(signal.samples[i]) << '\n';
}

SampledSpectrum read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("spectrum csv: empty file " + path.string());
  if (line != "omega,h_even,h_odd,amplitude,phase")
    throw std::invalid_argument("spectrum csv: bad header in " + path.string());

  std::vector<double> omega, h_even, h_odd;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 5)
      throw std::invalid_argument("spectrum csv: malformed row in " + path.string());
    omega.push_back(parse_number(cells[0], path));
    h_even.push_back(parse_number(cells[1], path));
    h_odd.push_back(parse_number(cells[2], path));
  }
  if (omega.size() < 5 || omega.size() % 2 == 0)
    throw std::invalid_argument("spectrum csv: grid must have odd size >= 5");
  const double omega_max = omega.back();
  if (!(omega_max > 0.0) || std::abs(omega.front() + omega_max) > 1e-9 * omega_max)
    throw std::invalid_argument("spectrum csv: grid must be symmetric about 0");
  return spectrum_from_parts(omega_max, std::move(h_even), std::move(h_odd));
}

void write_spectrum_csv(const std::filesystem::path& path, const SampledSpectrum& spec) {
  std::ofstream out = open_for_write(path);
  out << "omega,h_even,h_odd,amplitude,phase\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out << fmt(spec.omega_at(i)) << ',' << fmt(spec.h_even[i]) << ',' << fmt(spec.h_odd[i])
        << ',' << fmt(spec.amplitude[i]) << ',' << fmt(spec.phase[i]) << '\n';
  }
}

void write_extrema_csv(const std::filesystem::path& path, const ExtremaResult& extrema) {
  std::ofstream out = open_for_write(path);
  out << "location,value,second_deriv,kind\n";
  out << "0," << fmt(extrema.origin_value) << ',' << fmt(extrema.origin_second_deriv) << ','
      << (extrema.origin == ExtremumKind::maximum ? "max" : "min") << '\n';
  for (const ExtremumPoint& p : extrema.interior)
    out << fmt(p.location) << ',' << fmt(p.value) << ',' << fmt(p.second_deriv) << ','
        << (p.kind == ExtremumKind::maximum ? "max" : "min") << '\n';
}

void write_l2_history_csv(const std::filesystem::path& path,
                          std::span<const L2HistoryRow> history) {
  std::ofstream out = open_for_write(path);
  out << "iter,q,step,grad_norm\n";
  for (const L2HistoryRow& row : history)
    out << row.iter << ',' << fmt(row.q) << ',' << fmt(row.step) << ',' << fmt(row.grad_norm)
        << '\n';
}

void write_pointwise_history_csv(const std::filesystem::path& path,
                                 const PointwiseDiagnostics& diagnostics) {
  std::ofstream out = open_for_write(path);
  out << "iter,atom,alpha,omega,sigma\n";
  for (std::size_t it = 0; it < diagnostics.history.size(); ++it)
    for (std::size_t j = 0; j < diagnostics.history[it].size(); ++j) {
      const AtomTriple& p = diagnostics.history[it][j];
      out << it << ',' << j << ',' << fmt(p.alpha) << ',' << fmt(p.omega) << ','
          << fmt(p.sigma) << '\n';
    }
}

void write_ledger_csv(const std::filesystem::path& path, const RefinementLedger& ledger) {
  std::ofstream out = open_for_write(path);
  out << "level,atoms,p_n,q_n,q_max,residual_sq_norm\n";
  for (std::size_t i = 0; i < ledger.levels.size(); ++i) {
    const RefinementLevel& lv = ledger.levels[i];
    out << i << ',' << lv.mixture.atom_count() << ',' << lv.p_n << ',' << lv.q_n << ','
        << fmt(lv.q_max) << ',' << fmt(lv.residual_sq_norm) << '\n';
  }
}

}  // namespace chirplet
