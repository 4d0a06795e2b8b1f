#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "chirplet/extrema.hpp"
#include "chirplet/hierarchy.hpp"
#include "chirplet/l2_fit.hpp"
#include "chirplet/pointwise_fit.hpp"
#include "chirplet/spectrum.hpp"

namespace chirplet {

// All writers use "%.17g" so outputs round-trip exactly and identical runs
// produce byte-identical files.

// Signal CSV, header `t,f`, strictly increasing uniform t.
RealSignal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const RealSignal& signal);

// Spectrum CSV, header `omega,h_even,h_odd,amplitude,phase` (phase may be nan).
SampledSpectrum read_spectrum_csv(const std::filesystem::path& path);
void write_spectrum_csv(const std::filesystem::path& path, const SampledSpectrum& spec);

// Generic two-column table, validated against the expected header names.
struct TwoColumns {
  std::vector<double> first;
  std::vector<double> second;
};
TwoColumns read_two_column_csv(const std::filesystem::path& path,
                               const std::string& col_a, const std::string& col_b);
void write_two_column_csv(const std::filesystem::path& path, const std::string& col_a,
                          const std::string& col_b, std::span<const double> a,
                          std::span<const double> b);

// Extrema report `location,value,second_deriv,kind`.
void write_extrema_csv(const std::filesystem::path& path, const ExtremaResult& extrema);

// Ascent history `iter,q,step,grad_norm`.
void write_l2_history_csv(const std::filesystem::path& path,
                          std::span<const L2HistoryRow> history);

// Per-sweep parameter table `iter,atom,alpha,omega,sigma`.
void write_pointwise_history_csv(const std::filesystem::path& path,
                                 const PointwiseDiagnostics& diagnostics);

// Per-level ledger summary `level,atoms,p_n,q_n,q_max,residual_sq_norm`.
void write_ledger_csv(const std::filesystem::path& path, const RefinementLedger& ledger);

}  // namespace chirplet
