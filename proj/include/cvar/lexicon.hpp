#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cvar {

enum class PropertyCategory { algorithmic, resource_oriented, diction };

std::string_view to_string(PropertyCategory category);
PropertyCategory parse_category(std::string_view name);

/// A desired property with its stemmed synonym and antonym sets.
struct PropertyEntry {
  std::string name;
  PropertyCategory category = PropertyCategory::algorithmic;
  std::set<std::string> synonyms;
  std::set<std::string> antonyms;

  friend bool operator==(const PropertyEntry&, const PropertyEntry&) = default;
};

/// Builds an entry from raw words: lowercases and stems every term, rejects
/// multi-word terms and any term that lands in both sets (ConfigError).
PropertyEntry make_property(std::string name, PropertyCategory category,
                            const std::vector<std::string>& synonyms,
                            const std::vector<std::string>& antonyms);

class PropertyLexicon {
 public:
  PropertyLexicon() = default;

  /// Validates the invariants: names nonempty and distinct, synonym and
  /// antonym sets disjoint, terms already stemmed. Throws ConfigError.
  explicit PropertyLexicon(std::vector<PropertyEntry> entries);

  /// `[{"name", "category", "synonyms": [...], "antonyms": [...]}, ...]`
  static PropertyLexicon from_json(const nlohmann::json& doc);
  static PropertyLexicon load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  const std::vector<PropertyEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const PropertyEntry* find(std::string_view name) const;
  std::vector<std::string> names() const;

  /// 16 hex digits of FNV-1a over the canonical JSON form.
  std::string digest() const;

 private:
  std::vector<PropertyEntry> entries_;
};

}  // namespace cvar
