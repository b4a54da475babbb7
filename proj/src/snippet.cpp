#include "cvar/snippet.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace cvar {

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::java:
      return "java";
    case Language::c:
      return "c";
    case Language::cpp:
      return "cpp";
    case Language::javascript:
      return "javascript";
    case Language::unknown:
      break;
  }
  return "unknown";
}

std::optional<Language> parse_language(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "java") return Language::java;
  if (lower == "c") return Language::c;
  if (lower == "cpp" || lower == "c++" || lower == "cxx" || lower == "cc") return Language::cpp;
  if (lower == "javascript" || lower == "js" || lower == "node.js" || lower == "ecmascript")
    return Language::javascript;
  if (lower == "unknown") return Language::unknown;
  return std::nullopt;
}

bool has_content(std::string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](unsigned char c) { return !std::isspace(c); });
}

}  // namespace cvar
