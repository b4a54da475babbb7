#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cvar/snippet.hpp"

namespace cvar {

enum class TokenKind { word, number, symbol };

struct Token {
  TokenKind kind;
  std::string text;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Tolerant C-family lexer. Comments, preprocessor lines (C, C++ and
/// unknown), string, char, template and raw-string literals are dropped;
/// everything else comes back in source order. Operators are matched
/// longest-first. Never fails on unbalanced delimiters or unterminated
/// literals: those simply run to the end of the line or input.
///
/// Throws PreconditionError if `code` is empty or only whitespace.
std::vector<Token> tokenize(std::string_view code, Language language);

}  // namespace cvar
