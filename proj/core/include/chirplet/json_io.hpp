#pragma once

#include <filesystem>
#include <string>

#include "chirplet/chirp_model.hpp"
#include "chirplet/detrend.hpp"
#include "chirplet/gaussian_mixture.hpp"
#include "chirplet/hierarchy.hpp"

namespace chirplet {

// Mixture: { "center": {"alpha":..,"sigma":..}|null,
//            "positive": [{"alpha":..,"omega":..,"sigma":..}], "negative": [...] }
std::string mixture_to_json(const SignedMixture& mixture);
SignedMixture mixture_from_json(const std::string& text);

// Chirplet model, the canonical interchange artifact:
// { "center": {"alpha0":..,"sigma0":..,"t0":..}|null,
//   "atoms": [{"alpha":..,"omega":..,"sigma":..,"gamma":..,"t":..,"kappa":..}] }
std::string model_to_json(const ChirpletModel& model);
ChirpletModel model_from_json(const std::string& text);

// Refinement ledger with per-level mixtures and diagnostics.
std::string ledger_to_json(const RefinementLedger& ledger);
RefinementLedger ledger_from_json(const std::string& text);

// Detrend sidecar: degree, scaling, and scaled-basis coefficients.
std::string detrend_to_json(const DetrendResult& fit);

void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);

}  // namespace chirplet
