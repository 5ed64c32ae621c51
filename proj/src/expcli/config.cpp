#include "dioph/expcli/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dioph::expcli {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (n_min > n_max) throw ConfigError("n_min > n_max");
  if (height < 1) throw ConfigError("height must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (terms_cap < 1) throw ConfigError("terms_cap must be positive");
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  if (mode != "search" && mode != "root" && mode != "both") throw ConfigError("mode must be search, root or both");
}

std::string to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["surface"] = c.surface;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["height"] = c.height;
  j["terms_cap"] = c.terms_cap;
  j["tol"] = c.tol;
  j["jobs"] = c.jobs;
  j["out"] = c.out;
  j["summary"] = c.summary;
  j["seed"] = c.seed;
  j["mode"] = c.mode;
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "schema") {
        if (v != "1") throw ConfigError("unsupported config schema");
      } else if (key == "surface") {
        c.surface = v.get<std::string>();
      } else if (key == "n_min") {
        c.n_min = v.get<long>();
      } else if (key == "n_max") {
        c.n_max = v.get<long>();
      } else if (key == "height") {
        c.height = v.get<long>();
      } else if (key == "terms_cap") {
        c.terms_cap = v.get<std::size_t>();
      } else if (key == "tol") {
        c.tol = v.get<double>();
      } else if (key == "jobs") {
        c.jobs = v.get<int>();
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "summary") {
        c.summary = v.get<std::string>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "mode") {
        c.mode = v.get<std::string>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str(), std::move(base));
}

}  // namespace dioph::expcli
