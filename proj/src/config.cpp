#include "cvar/config.hpp"

#include <cstdlib>

#include "cvar/error.hpp"
#include "cvar/fingerprint.hpp"
#include "cvar/io.hpp"

namespace cvar {

void Config::validate(std::size_t top_k) const {
  require_ratio(dedup_threshold, "dedup_threshold");
  require_ratio(lookup_threshold, "lookup_threshold");
  require_ratio(het_threshold, "het_threshold");
  bm25.validate();
  if (candidate_pool < 1) throw ConfigError("candidate_pool must be >= 1");
  if (candidate_pool < top_k) {
    throw ConfigError("candidate_pool (" + std::to_string(candidate_pool) +
                      ") is smaller than top_k (" + std::to_string(top_k) + ")");
  }
}

Config Config::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  Config c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "dedup_threshold") {
        c.dedup_threshold = value.get<double>();
      } else if (key == "lookup_threshold") {
        c.lookup_threshold = value.get<double>();
      } else if (key == "het_threshold") {
        c.het_threshold = value.get<double>();
      } else if (key == "bm25_k1") {
        c.bm25.k1 = value.get<double>();
      } else if (key == "bm25_b") {
        c.bm25.b = value.get<double>();
      } else if (key == "candidate_pool") {
        if (!value.is_number_unsigned()) throw ConfigError("candidate_pool must be a positive integer");
        c.candidate_pool = value.get<std::size_t>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json Config::to_json() const {
  return {{"dedup_threshold", dedup_threshold}, {"lookup_threshold", lookup_threshold},
          {"het_threshold", het_threshold},     {"bm25_k1", bm25.k1},
          {"bm25_b", bm25.b},                   {"candidate_pool", candidate_pool}};
}

Config Config::load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

Config Config::resolve(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load(*explicit_path);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return load(env);
  }
  return Config{};
}

}  // namespace cvar
