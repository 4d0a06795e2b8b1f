#include "chirplet/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chirplet {

namespace {

using nlohmann::json;

json atom_to_json(const GaussianAtom& a, bool with_omega) {
  json j;
  j["alpha"] = a.alpha;
  if (with_omega) j["omega"] = a.omega_c;
  j["sigma"] = a.sigma;
  return j;
}

json mixture_json(const SignedMixture& mix) {
  json j;
  j["center"] = mix.center ? atom_to_json(*mix.center, false) : json(nullptr);
  j["positive"] = json::array();
  for (const GaussianAtom& a : mix.positive) j["positive"].push_back(atom_to_json(a, true));
  j["negative"] = json::array();
  for (const GaussianAtom& a : mix.negative) j["negative"].push_back(atom_to_json(a, true));
  return j;
}

SignedMixture mixture_from(const json& j) {
  SignedMixture mix;
  if (!j.at("center").is_null()) {
    GaussianAtom c;
    c.alpha = j.at("center").at("alpha").get<double>();
    c.sigma = j.at("center").at("sigma").get<double>();
    c.omega_c = 0.0;
    c.kind = AtomKind::center;
    mix.center = c;
  }
  auto read_list = [&](const char* key, std::vector<GaussianAtom>& list) {
    for (const json& e : j.at(key)) {
      GaussianAtom a;
      a.alpha = e.at("alpha").get<double>();
      a.omega_c = e.at("omega").get<double>();
      a.sigma = e.at("sigma").get<double>();
      a.kind = AtomKind::pair;
      list.push_back(a);
    }
  };
  read_list("positive", mix.positive);
  read_list("negative", mix.negative);
  return mix;
}

const char* stop_name(StopReason r) {
  switch (r) {
    case StopReason::threshold:
      return "threshold";
    case StopReason::no_extrema:
      return "no_extrema";
    case StopReason::non_improving:
      return "non_improving";
    case StopReason::max_levels:
      return "max_levels";
    default:
      return "not_stopped";
  }
}

StopReason stop_from(const std::string& s) {
  if (s == "threshold") return StopReason::threshold;
  if (s == "no_extrema") return StopReason::no_extrema;
  if (s == "non_improving") return StopReason::non_improving;
  if (s == "max_levels") return StopReason::max_levels;
  return StopReason::not_stopped;
}

}  // namespace

std::string mixture_to_json(const SignedMixture& mixture) {
  return mixture_json(mixture).dump(2);
}

SignedMixture mixture_from_json(const std::string& text) {
  return mixture_from(json::parse(text));
}

std::string model_to_json(const ChirpletModel& model) {
  json j;
  if (model.center) {
    j["center"] = {{"alpha0", model.center->alpha0},
                   {"sigma0", model.center->sigma0},
                   {"t0", model.center->t0}};
  } else {
    j["center"] = nullptr;
  }
  j["atoms"] = json::array();
  for (const ChirpAtom& a : model.atoms) {
    j["atoms"].push_back({{"alpha", a.alpha},
                          {"omega", a.omega_c},
                          {"sigma", a.sigma},
                          {"gamma", a.gamma},
                          {"t", a.t_c},
                          {"kappa", a.kappa}});
  }
  return j.dump(2);
}

ChirpletModel model_from_json(const std::string& text) {
  const json j = json::parse(text);
  ChirpletModel model;
  if (!j.at("center").is_null()) {
    model.center = CenterChirp{j.at("center").at("alpha0").get<double>(),
                               j.at("center").at("sigma0").get<double>(),
                               j.at("center").at("t0").get<double>()};
  }
  for (const json& e : j.at("atoms")) {
    model.atoms.push_back({e.at("alpha").get<double>(), e.at("omega").get<double>(),
                           e.at("sigma").get<double>(), e.at("gamma").get<double>(),
                           e.at("t").get<double>(), e.at("kappa").get<double>()});
  }
  return model;
}

std::string ledger_to_json(const RefinementLedger& ledger) {
  json j;
  j["method"] = ledger.method == FitMethod::l2 ? "l2" : "pointwise";
  j["eps_stop"] = ledger.eps_stop;
  j["initial_sq_norm"] = ledger.initial_sq_norm;
  j["stop"] = stop_name(ledger.stop);
  j["levels"] = json::array();
  for (const RefinementLevel& lv : ledger.levels) {
    json e;
    e["mixture"] = mixture_json(lv.mixture);
    e["q_max"] = lv.q_max;
    e["residual_sq_norm"] = lv.residual_sq_norm;
    e["p_n"] = lv.p_n;
    e["q_n"] = lv.q_n;
    e["has_center"] = lv.has_center;
    e["fit_converged"] = lv.fit_converged;
    j["levels"].push_back(e);
  }
  return j.dump(2);
}

RefinementLedger ledger_from_json(const std::string& text) {
  const json j = json::parse(text);
  RefinementLedger ledger;
  ledger.method = j.at("method").get<std::string>() == "l2" ? FitMethod::l2 : FitMethod::pointwise;
  ledger.eps_stop = j.at("eps_stop").get<double>();
  ledger.initial_sq_norm = j.at("initial_sq_norm").get<double>();
  ledger.stop = stop_from(j.at("stop").get<std::string>());
  for (const json& e : j.at("levels")) {
    RefinementLevel lv;
    lv.mixture = mixture_from(e.at("mixture"));
    lv.q_max = e.at("q_max").get<double>();
    lv.residual_sq_norm = e.at("residual_sq_norm").get<double>();
    lv.p_n = e.at("p_n").get<int>();
    lv.q_n = e.at("q_n").get<int>();
    lv.has_center = e.at("has_center").get<bool>();
    lv.fit_converged = e.at("fit_converged").get<bool>();
    ledger.levels.push_back(std::move(lv));
  }
  return ledger;
}

std::string detrend_to_json(const DetrendResult& fit) {
  json j;
  j["degree"] = fit.degree;
  j["t_mid"] = fit.t_mid;
  j["t_half"] = fit.t_half;
  j["coefficients"] = fit.coefficients;
  j["basis"] = "c_k * u^k with u = (t - t_mid) / t_half";
  return j.dump(2);
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_text: cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string load_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_text: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace chirplet
