#include "cvar/lexicon.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "cvar/error.hpp"
#include "cvar/stemmer.hpp"

namespace cvar {
namespace {

std::set<std::string> stem_all(const std::vector<std::string>& raw, const std::string& property) {
  std::set<std::string> out;
  for (const auto& term : raw) {
    const auto words = word_tokens(term);
    if (words.size() != 1 || words.front().size() != term.size()) {
      throw ConfigError("property '" + property + "': term '" + term +
                        "' must be a single alphanumeric word");
    }
    out.insert(stem(term));
  }
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

std::string_view to_string(PropertyCategory category) {
  switch (category) {
    case PropertyCategory::algorithmic:
      return "algorithmic";
    case PropertyCategory::resource_oriented:
      return "resource_oriented";
    case PropertyCategory::diction:
      return "diction";
  }
  return "algorithmic";
}

PropertyCategory parse_category(std::string_view name) {
  if (name == "algorithmic") return PropertyCategory::algorithmic;
  if (name == "resource_oriented" || name == "resource-oriented")
    return PropertyCategory::resource_oriented;
  if (name == "diction") return PropertyCategory::diction;
  throw ConfigError("unknown property category '" + std::string(name) + "'");
}

PropertyEntry make_property(std::string name, PropertyCategory category,
                            const std::vector<std::string>& synonyms,
                            const std::vector<std::string>& antonyms) {
  PropertyEntry entry;
  entry.synonyms = stem_all(synonyms, name);
  entry.antonyms = stem_all(antonyms, name);
  for (const auto& s : entry.synonyms) {
    if (entry.antonyms.contains(s)) {
      throw ConfigError("property '" + name + "': '" + s + "' is both synonym and antonym");
    }
  }
  entry.name = std::move(name);
  entry.category = category;
  return entry;
}

PropertyLexicon::PropertyLexicon(std::vector<PropertyEntry> entries)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.name.empty()) throw ConfigError("property name must be nonempty");
    if (!seen.insert(e.name).second) throw ConfigError("duplicate property '" + e.name + "'");
    for (const auto* terms : {&e.synonyms, &e.antonyms}) {
      for (const auto& t : *terms) {
        if (t.empty() || stem(t) != t) {
          throw ConfigError("property '" + e.name + "': term '" + t + "' is not stemmed");
        }
      }
    }
    for (const auto& s : e.synonyms) {
      if (e.antonyms.contains(s)) {
        throw ConfigError("property '" + e.name + "': '" + s + "' is both synonym and antonym");
      }
    }
  }
}

PropertyLexicon PropertyLexicon::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw ParseError("lexicon: expected a JSON array of properties");
  std::vector<PropertyEntry> entries;
  for (const auto& item : doc) {
    try {
      entries.push_back(make_property(
          item.at("name").get<std::string>(),
          parse_category(item.value("category", std::string("algorithmic"))),
          item.value("synonyms", std::vector<std::string>{}),
          item.value("antonyms", std::vector<std::string>{})));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("lexicon: ") + e.what());
    }
  }
  return PropertyLexicon(std::move(entries));
}

PropertyLexicon PropertyLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("lexicon " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json PropertyLexicon::to_json() const {
  auto doc = nlohmann::json::array();
  for (const auto& e : entries_) {
    doc.push_back({{"name", e.name},
                   {"category", to_string(e.category)},
                   {"synonyms", e.synonyms},
                   {"antonyms", e.antonyms}});
  }
  return doc;
}

const PropertyEntry* PropertyLexicon::find(std::string_view name) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const PropertyEntry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

std::vector<std::string> PropertyLexicon::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

std::string PropertyLexicon::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(to_json().dump())));
  return buf;
}

}  // namespace cvar
