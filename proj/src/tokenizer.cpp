#include "cvar/tokenizer.hpp"

#include <array>
#include <cctype>

#include "cvar/error.hpp"

namespace cvar {
namespace {

// Longest first within each length class.
constexpr std::array<std::string_view, 1> kOps4 = {">>>="};
constexpr std::array<std::string_view, 12> kOps3 = {
    ">>>", "<<=", ">>=", "===", "!==", "...", "->*", "<=>", "**=", "&&=", "||=", "?\?="};
constexpr std::array<std::string_view, 25> kOps2 = {
    "++", "--", "+=", "-=", "*=", "/=", "%=", "==", "!=", "<=", ">=", "&&", "||",
    "<<", ">>", "->", "::", "&=", "|=", "^=", "=>", "??", "?.", "**", ".*"};

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

class Lexer {
 public:
  Lexer(std::string_view src, Language lang) : src_(src), lang_(lang) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      const unsigned char c = src_[pos_];
      if (c == '\n') {
        at_line_start_ = true;
        ++pos_;
        continue;
      }
      if (std::isspace(c)) {
        ++pos_;
        continue;
      }
      if (c == '#' && at_line_start_ && strips_hash_lines()) {
        skip_directive();
        continue;
      }
      at_line_start_ = false;
      if (starts_with("//")) {
        skip_to_eol();
      } else if (starts_with("/*")) {
        const auto end = src_.find("*/", pos_ + 2);
        pos_ = end == std::string_view::npos ? src_.size() : end + 2;
      } else if (starts_with("\"\"\"")) {
        const auto end = src_.find("\"\"\"", pos_ + 3);
        pos_ = end == std::string_view::npos ? src_.size() : end + 3;
      } else if (c == '"' || c == '\'') {
        skip_quoted(static_cast<char>(c), /*multiline=*/false);
      } else if (c == '`') {
        skip_quoted('`', /*multiline=*/true);
      } else if (std::isdigit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                                      std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number();
      } else if (is_ident_start(c)) {
        lex_word();
      } else {
        lex_symbol();
      }
    }
    return std::move(out_);
  }

 private:
  bool strips_hash_lines() const {
    return lang_ == Language::c || lang_ == Language::cpp || lang_ == Language::unknown;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_to_eol() {
    const auto end = src_.find('\n', pos_);
    pos_ = end == std::string_view::npos ? src_.size() : end;
  }

  // Preprocessor line, honouring backslash continuations.
  void skip_directive() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') {
        pos_ += 2;
        continue;
      }
      if (src_[pos_] == '\n') return;
      if (starts_with("/*")) {
        const auto end = src_.find("*/", pos_ + 2);
        pos_ = end == std::string_view::npos ? src_.size() : end + 2;
        continue;
      }
      ++pos_;
    }
  }

  void skip_quoted(char quote, bool multiline) {
    ++pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == quote) {
        ++pos_;
        return;
      }
      if (c == '\n' && !multiline) return;  // unterminated
      ++pos_;
    }
    pos_ = src_.size();
  }

  // R"delim( ... )delim"
  void skip_raw_string() {
    const auto open = src_.find('(', pos_ + 1);
    if (open == std::string_view::npos) {
      skip_quoted('"', false);
      return;
    }
    const std::string closing =
        ")" + std::string(src_.substr(pos_ + 1, open - pos_ - 1)) + "\"";
    const auto end = src_.find(closing, open + 1);
    pos_ = end == std::string_view::npos ? src_.size() : end + closing.size();
  }

  void lex_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const unsigned char c = src_[pos_];
      if (std::isalnum(c) || c == '.' || c == '_') {
        // exponent sign: 1e-5, 0x1p+3
        if ((c == 'e' || c == 'E' || c == 'p' || c == 'P') && pos_ + 1 < src_.size() &&
            (src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-') &&
            !(src_[start] == '0' && start + 1 < src_.size() &&
              (src_[start + 1] == 'x' || src_[start + 1] == 'X') && (c == 'e' || c == 'E'))) {
          pos_ += 2;
          continue;
        }
        ++pos_;
      } else if (c == '\'' && (lang_ == Language::c || lang_ == Language::cpp) &&
                 pos_ + 1 < src_.size() &&
                 std::isalnum(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_;  // C++14 digit separator
      } else {
        break;
      }
    }
    out_.push_back({TokenKind::number, std::string(src_.substr(start, pos_ - start))});
  }

  void lex_word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view word = src_.substr(start, pos_ - start);
    if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
      if (word == "R" || word == "LR" || word == "uR" || word == "UR" || word == "u8R") {
        if (src_[pos_] == '"') {
          skip_raw_string();
          return;
        }
      }
      if (word == "L" || word == "u" || word == "U" || word == "u8") {
        skip_quoted(src_[pos_], false);
        return;
      }
    }
    out_.push_back({TokenKind::word, std::string(word)});
  }

  void lex_symbol() {
    for (const auto op : kOps4) {
      if (starts_with(op)) return push_symbol(op);
    }
    for (const auto op : kOps3) {
      if (starts_with(op)) return push_symbol(op);
    }
    for (const auto op : kOps2) {
      if (starts_with(op)) return push_symbol(op);
    }
    push_symbol(src_.substr(pos_, 1));
  }

  void push_symbol(std::string_view text) {
    out_.push_back({TokenKind::symbol, std::string(text)});
    pos_ += text.size();
  }

  std::string_view src_;
  Language lang_;
  std::size_t pos_ = 0;
  bool at_line_start_ = true;
  std::vector<Token> out_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view code, Language language) {
  if (!has_content(code)) throw PreconditionError("tokenize: code is empty");
  return Lexer(code, language).run();
}

}  // namespace cvar
