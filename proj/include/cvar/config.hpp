#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "cvar/index.hpp"

namespace cvar {

inline constexpr const char* kConfigEnvVar = "CVAR_CONFIG";

struct Config {
  double dedup_threshold = 1.0;
  double lookup_threshold = 0.8;
  double het_threshold = 0.8;
  Bm25Params bm25;
  std::size_t candidate_pool = 100;

  /// Throws ConfigError if a ratio leaves (0, 1], k1 <= 0, b leaves [0, 1]
  /// or the pool is smaller than `top_k`.
  void validate(std::size_t top_k = 1) const;

  /// Keys: dedup_threshold, lookup_threshold, het_threshold, bm25_k1,
  /// bm25_b, candidate_pool. Missing keys keep their defaults; unknown keys
  /// are rejected.
  static Config from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  static Config load(const std::filesystem::path& path);

  /// `explicit_path` if given, else the file named by CVAR_CONFIG, else the
  /// defaults.
  static Config resolve(const std::optional<std::filesystem::path>& explicit_path);
};

}  // namespace cvar
