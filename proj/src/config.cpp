#include "insight/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace insight {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "pool_size",  "batch_size",  "candidate_size", "rollouts",      "mi_rollouts",
      "steps",      "strategy",    "eta",            "mu",            "target_phi",
      "lambda",     "prior_alpha", "prior_beta",     "seed",          "env.init",
      "env.lo",     "env.hi",      "env.weights",    "env.rates",     "env.gain",
      "env.transfer", "ds.max_attempts", "output.log", "output.header", "output.rounds",
      "output.checkpoint",
  };
  return keys;
}

std::uint64_t get_unsigned(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(key, "must be a non-negative integer");
  throw ConfigError(key, "must be an integer");
}

double get_real(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "must be a number");
  return v.get<double>();
}

std::string get_string(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key, "must be a string");
  return v.get<std::string>();
}

std::vector<double> get_reals(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(key, "must be an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ConfigError(key, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ExperimentConfig::validate() const {
  if (pool_size < 1) throw ConfigError("pool_size", "must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size", "must be >= 1");
  if (batch_size > pool_size) {
    throw ConfigError("batch_size", "must be <= pool_size (" + std::to_string(pool_size) + ")");
  }
  if (candidate_size < batch_size) {
    throw ConfigError("candidate_size", "must be >= batch_size (" + std::to_string(batch_size) + ")");
  }
  if (candidate_size > pool_size) {
    throw ConfigError("candidate_size", "must be <= pool_size (" + std::to_string(pool_size) + ")");
  }
  if (rollouts < 1) throw ConfigError("rollouts", "must be >= 1");
  if (acquisition.rollouts_k < 1 || acquisition.rollouts_k > kMaxScoringRollouts) {
    throw ConfigError("mi_rollouts", "must lie in [1, " + std::to_string(kMaxScoringRollouts) + "]");
  }
  if (!(acquisition.eta >= 0.0) || !std::isfinite(acquisition.eta)) {
    throw ConfigError("eta", "must be finite and >= 0");
  }
  if (!in_unit(acquisition.mu)) throw ConfigError("mu", "must lie in [0, 1]");
  if (!in_unit(acquisition.target_phi)) throw ConfigError("target_phi", "must lie in [0, 1]");
  if (!in_unit(lambda)) throw ConfigError("lambda", "must lie in [0, 1]");
  if (!(prior_alpha > 0.0) || !std::isfinite(prior_alpha)) {
    throw ConfigError("prior_alpha", "must be finite and > 0");
  }
  if (!(prior_beta > 0.0) || !std::isfinite(prior_beta)) {
    throw ConfigError("prior_beta", "must be finite and > 0");
  }
  try {
    dynamics.validate(pool_size);
  } catch (const std::invalid_argument& e) {
    // LearningDynamics messages start with the key name.
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(' ')), msg);
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) throw ConfigError(key, "unknown config key");
  }

  ExperimentConfig cfg;
  auto has = [&](const char* key) { return doc.contains(key); };
  if (has("pool_size")) cfg.pool_size = get_unsigned(doc, "pool_size");
  if (has("batch_size")) cfg.batch_size = get_unsigned(doc, "batch_size");
  cfg.candidate_size = has("candidate_size") ? get_unsigned(doc, "candidate_size")
                                             : std::min(16 * cfg.batch_size, cfg.pool_size);
  if (has("rollouts")) {
    const auto k = get_unsigned(doc, "rollouts");
    if (k < 1 || k > 1'000'000) throw ConfigError("rollouts", "must lie in [1, 1000000]");
    cfg.rollouts = static_cast<int>(k);
  }
  if (has("mi_rollouts")) {
    const auto k = get_unsigned(doc, "mi_rollouts");
    if (k < 1 || k > static_cast<std::uint64_t>(kMaxScoringRollouts)) {
      throw ConfigError("mi_rollouts",
                        "must lie in [1, " + std::to_string(kMaxScoringRollouts) + "]");
    }
    cfg.acquisition.rollouts_k = static_cast<int>(k);
  } else {
    cfg.acquisition.rollouts_k = std::min(cfg.rollouts, kMaxScoringRollouts);
  }
  if (has("steps")) cfg.steps = get_unsigned(doc, "steps");
  if (has("strategy")) {
    try {
      cfg.acquisition.strategy = parse_strategy(get_string(doc, "strategy"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("strategy", e.what());
    }
  }
  if (has("eta")) cfg.acquisition.eta = get_real(doc, "eta");
  if (has("mu")) cfg.acquisition.mu = get_real(doc, "mu");
  if (has("target_phi")) cfg.acquisition.target_phi = get_real(doc, "target_phi");
  if (has("lambda")) cfg.lambda = get_real(doc, "lambda");
  if (has("prior_alpha")) cfg.prior_alpha = get_real(doc, "prior_alpha");
  if (has("prior_beta")) cfg.prior_beta = get_real(doc, "prior_beta");
  if (has("seed")) cfg.seed = get_unsigned(doc, "seed");

  const std::string init = has("env.init") ? get_string(doc, "env.init") : "uniform";
  auto reject_unused = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (has(k)) throw ConfigError(k, "not used by env.init = " + init);
    }
  };
  if (init == "uniform") {
    reject_unused({"env.weights", "env.rates"});
    UniformInit u;
    if (has("env.lo")) u.lo = get_real(doc, "env.lo");
    if (has("env.hi")) u.hi = get_real(doc, "env.hi");
    cfg.dynamics.initial = u;
  } else if (init == "bimodal") {
    reject_unused({"env.lo", "env.hi"});
    if (!has("env.weights")) throw ConfigError("env.weights", "required for env.init = bimodal");
    if (!has("env.rates")) throw ConfigError("env.rates", "required for env.init = bimodal");
    cfg.dynamics.initial = MixtureInit{get_reals(doc, "env.weights"), get_reals(doc, "env.rates")};
  } else if (init == "fixed") {
    reject_unused({"env.lo", "env.hi", "env.weights"});
    if (!has("env.rates")) throw ConfigError("env.rates", "required for env.init = fixed");
    cfg.dynamics.initial = FixedInit{get_reals(doc, "env.rates")};
  } else {
    throw ConfigError("env.init", "must be one of uniform, bimodal, fixed");
  }
  if (has("env.gain")) cfg.dynamics.gain = get_real(doc, "env.gain");
  if (has("env.transfer")) cfg.dynamics.transfer = get_real(doc, "env.transfer");
  if (has("ds.max_attempts")) cfg.ds_max_attempts = get_unsigned(doc, "ds.max_attempts");
  if (has("output.log")) cfg.output.log = get_string(doc, "output.log");
  if (has("output.header")) cfg.output.header = get_string(doc, "output.header");
  if (has("output.rounds")) cfg.output.rounds = get_string(doc, "output.rounds");
  if (has("output.checkpoint")) cfg.output.checkpoint = get_string(doc, "output.checkpoint");

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<document>", "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json j;
  j["pool_size"] = cfg.pool_size;
  j["batch_size"] = cfg.batch_size;
  j["candidate_size"] = cfg.candidate_size;
  j["rollouts"] = cfg.rollouts;
  j["mi_rollouts"] = cfg.acquisition.rollouts_k;
  j["steps"] = cfg.steps;
  j["strategy"] = std::string(to_string(cfg.acquisition.strategy));
  j["eta"] = cfg.acquisition.eta;
  j["mu"] = cfg.acquisition.mu;
  j["target_phi"] = cfg.acquisition.target_phi;
  j["lambda"] = cfg.lambda;
  j["prior_alpha"] = cfg.prior_alpha;
  j["prior_beta"] = cfg.prior_beta;
  j["seed"] = cfg.seed;
  if (const auto* u = std::get_if<UniformInit>(&cfg.dynamics.initial)) {
    j["env.init"] = "uniform";
    j["env.lo"] = u->lo;
    j["env.hi"] = u->hi;
  } else if (const auto* m = std::get_if<MixtureInit>(&cfg.dynamics.initial)) {
    j["env.init"] = "bimodal";
    j["env.weights"] = m->weights;
    j["env.rates"] = m->rates;
  } else {
    j["env.init"] = "fixed";
    j["env.rates"] = std::get<FixedInit>(cfg.dynamics.initial).rates;
  }
  j["env.gain"] = cfg.dynamics.gain;
  j["env.transfer"] = cfg.dynamics.transfer;
  j["ds.max_attempts"] = cfg.ds_max_attempts;
  return j.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_digest(const ExperimentConfig& cfg) { return hex64(fnv1a64(canonical_json(cfg))); }

}  // namespace insight
