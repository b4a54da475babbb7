#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cvar {

enum class Language { java, c, cpp, javascript, unknown };

std::string_view to_string(Language lang);

/// Accepts the canonical names plus common aliases ("c++", "js", ...).
/// Returns nullopt for anything else.
std::optional<Language> parse_language(std::string_view name);

struct CodeSnippet {
  std::string id;
  std::string code;
  Language language = Language::unknown;
  std::string post_id;

  friend bool operator==(const CodeSnippet&, const CodeSnippet&) = default;
};

/// True if `text` contains anything besides whitespace.
bool has_content(std::string_view text);

}  // namespace cvar
