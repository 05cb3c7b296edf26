#include "run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rmlab::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys{"code",       "decoder_spec", "snr_db",      "seed",    "ensemble_seed",
                                  "resample_ensembles", "max_trials", "min_errors", "threads", "target_bler",
                                  "low_db",     "high_db",      "csv_path",    "json_path"};

template <class T>
void read(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("run config must be a JSON object");
    for (const auto& [key, value] : doc.items())
      if (!kKeys.count(key)) throw std::invalid_argument("unknown run config key: " + key);
    if (doc.contains("code")) {
      const auto& code = doc.at("code");
      config.r = code.at("r").get<int>();
      config.m = code.at("m").get<int>();
    }
    if (doc.contains("decoder_spec")) {
      const auto& spec = doc.at("decoder_spec");
      config.decoder_specs = spec.is_string() ? std::vector<std::string>{spec.get<std::string>()}
                                              : spec.get<std::vector<std::string>>();
    }
    read(doc, "snr_db", config.snr_db);
    read(doc, "seed", config.seed);
    read(doc, "ensemble_seed", config.ensemble_seed);
    read(doc, "resample_ensembles", config.resample_ensembles);
    read(doc, "max_trials", config.max_trials);
    read(doc, "min_errors", config.min_errors);
    read(doc, "threads", config.threads);
    read(doc, "target_bler", config.target_bler);
    read(doc, "low_db", config.low_db);
    read(doc, "high_db", config.high_db);
    read(doc, "csv_path", config.csv_path);
    read(doc, "json_path", config.json_path);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed run config: ") + e.what());
  }
  if (config.m < 0) throw std::invalid_argument("run config: m must be non-negative");
  return config;
}

std::string render_run_config(const RunConfig& config) {
  json doc;
  doc["code"] = {{"r", config.r}, {"m", config.m}};
  if (config.decoder_specs.size() == 1)
    doc["decoder_spec"] = config.decoder_specs.front();
  else
    doc["decoder_spec"] = config.decoder_specs;
  doc["snr_db"] = config.snr_db;
  doc["seed"] = config.seed;
  doc["ensemble_seed"] = config.ensemble_seed;
  doc["resample_ensembles"] = config.resample_ensembles;
  doc["max_trials"] = config.max_trials;
  doc["min_errors"] = config.min_errors;
  doc["threads"] = config.threads;
  doc["target_bler"] = config.target_bler;
  doc["low_db"] = config.low_db;
  doc["high_db"] = config.high_db;
  doc["csv_path"] = config.csv_path;
  doc["json_path"] = config.json_path;
  return doc.dump(2) + "\n";
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

}  // namespace rmlab::cli
