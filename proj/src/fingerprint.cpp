#include "cvar/fingerprint.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "cvar/error.hpp"

namespace cvar {
namespace {

constexpr std::array<std::string_view, 20> kStructuralOps = {
    "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||", "!",
    "+=", "-=", "*=", "/=", "++", "--"};

bool is_jump(std::string_view word) {
  return word == "return" || word == "throw" || word == "break" || word == "continue" ||
         word == "goto";
}

// JavaScript strict equality carries the same structure as ==.
std::string_view normalize_op(std::string_view op) {
  if (op == "===") return "==";
  if (op == "!==") return "!=";
  return op;
}

// Recursive descent over statements, tolerant of partial code. Each open
// control construct is a frame; operators are emitted with the innermost
// frame's keyword as prefix.
class StructureWalker {
 public:
  explicit StructureWalker(std::span<const Token> tokens) : toks_(tokens) {}

  std::set<std::string> run() {
    block(/*nested=*/false);
    while (!frames_.empty()) leave();
    return std::move(terms_);
  }

 private:
  struct Frame {
    std::string_view keyword;
    std::size_t ops = 0;
  };

  bool done() const { return pos_ >= toks_.size(); }

  bool at_symbol(std::string_view s) const {
    return !done() && toks_[pos_].kind == TokenKind::symbol && toks_[pos_].text == s;
  }

  bool at_word(std::string_view w) const {
    return !done() && toks_[pos_].kind == TokenKind::word && toks_[pos_].text == w;
  }

  void enter(std::string_view keyword) { frames_.push_back({keyword, 0}); }

  void leave() {
    const Frame frame = frames_.back();
    frames_.pop_back();
    if (frame.ops == 0 && frame.keyword != "if") terms_.emplace(frame.keyword);
  }

  void emit(std::string_view raw) {
    const std::string_view op = normalize_op(raw);
    if (!is_structural_operator(op)) return;
    if (frames_.empty()) {
      terms_.emplace(op);
      return;
    }
    std::string term(frames_.back().keyword);
    term += op;
    terms_.insert(std::move(term));
    for (auto& frame : frames_) ++frame.ops;
  }

  // Statements up to the closing brace (consumed) or end of input. Returns
  // whether the last statement jumps.
  bool block(bool nested) {
    std::size_t guards = 0;
    bool last_jumps = false;
    while (!done()) {
      if (at_symbol("}")) {
        ++pos_;
        if (nested) break;
        continue;  // stray closer at top level
      }
      bool guard = false;
      const std::size_t before = pos_;
      last_jumps = statement(guard);
      if (pos_ == before) ++pos_;
      if (guard) {
        enter("if");
        ++guards;
      }
    }
    for (; guards > 0; --guards) leave();
    return last_jumps;
  }

  bool statement(bool& guard) {
    if (done()) return false;
    const Token& tok = toks_[pos_];
    if (tok.kind == TokenKind::symbol) {
      if (tok.text == "{") {
        ++pos_;
        return block(/*nested=*/true);
      }
      if (tok.text == ";") {
        ++pos_;
        return false;
      }
    } else if (tok.kind == TokenKind::word) {
      if (tok.text == "if") return if_statement(guard);
      if (tok.text == "for" || tok.text == "while" || tok.text == "switch") return loop();
      if (tok.text == "do") return do_loop();
      if (tok.text == "else") {
        ++pos_;
        return false;
      }
    }
    return expression_statement();
  }

  bool if_statement(bool& guard) {
    ++pos_;
    enter("if");
    parenthesized();
    bool ignored = false;
    const bool then_jumps = statement(ignored);
    bool jumps = false;
    if (at_word("else")) {
      ++pos_;
      const bool else_jumps = statement(ignored);
      jumps = then_jumps && else_jumps;
    } else {
      guard = then_jumps;
    }
    leave();
    return jumps;
  }

  bool loop() {
    enter(toks_[pos_].text);
    ++pos_;
    parenthesized();
    bool ignored = false;
    statement(ignored);
    leave();
    return false;
  }

  bool do_loop() {
    ++pos_;
    enter("do");
    bool ignored = false;
    statement(ignored);
    if (at_word("while")) {
      ++pos_;
      parenthesized();
      if (at_symbol(";")) ++pos_;
    }
    leave();
    return false;
  }

  // A balanced (...) group, typically a condition or loop header.
  void parenthesized() {
    if (!at_symbol("(")) return;
    int depth = 0;
    while (!done()) {
      const Token& tok = toks_[pos_];
      if (tok.kind == TokenKind::symbol) {
        if (tok.text == "(") {
          ++depth;
        } else if (tok.text == ")") {
          if (--depth == 0) {
            ++pos_;
            return;
          }
        } else if (tok.text == "{") {
          ++pos_;
          block(/*nested=*/true);  // lambda body inside a condition
          continue;
        } else {
          emit(tok.text);
        }
      }
      ++pos_;
    }
  }

  // `{` right after one of these starts an aggregate initializer rather than
  // a body.
  static bool opens_initializer(const Token* prev) {
    if (prev == nullptr) return true;
    if (prev->kind == TokenKind::word) return prev->text == "return";
    if (prev->kind == TokenKind::number) return true;
    return prev->text != ")" && prev->text != "->" && prev->text != "=>";
  }

  void initializer() {
    int depth = 0;
    while (!done()) {
      const Token& tok = toks_[pos_++];
      if (tok.kind != TokenKind::symbol) continue;
      if (tok.text == "{") {
        ++depth;
      } else if (tok.text == "}") {
        if (--depth == 0) return;
      } else {
        emit(tok.text);
      }
    }
  }

  bool expression_statement() {
    const bool jumps = toks_[pos_].kind == TokenKind::word && is_jump(toks_[pos_].text);
    int depth = 0;
    const Token* prev = nullptr;
    while (!done()) {
      const Token& tok = toks_[pos_];
      if (tok.kind == TokenKind::symbol) {
        if (depth == 0 && tok.text == ";") {
          ++pos_;
          break;
        }
        if (depth == 0 && tok.text == "}") break;
        if (tok.text == "(" || tok.text == "[") {
          ++depth;
        } else if (tok.text == ")" || tok.text == "]") {
          if (depth > 0) --depth;
        } else if (tok.text == "{") {
          if (opens_initializer(prev)) {
            initializer();
            prev = &toks_[pos_ - 1];
            continue;
          }
          ++pos_;
          block(/*nested=*/true);
          if (depth == 0) return jumps;  // declaration body ends the statement
          prev = &toks_[pos_ - 1];
          continue;
        } else {
          emit(tok.text);
        }
      } else if (tok.kind == TokenKind::word && prev != nullptr && depth == 0 &&
                 (is_control_keyword(tok.text) || tok.text == "else")) {
        break;  // missing ';' before the next construct
      }
      prev = &tok;
      ++pos_;
    }
    return jumps;
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Frame> frames_;
  std::set<std::string> terms_;
};

}  // namespace

bool is_structural_operator(std::string_view op) {
  return std::find(kStructuralOps.begin(), kStructuralOps.end(), op) != kStructuralOps.end();
}

bool is_control_keyword(std::string_view word) {
  return word == "if" || word == "for" || word == "while" || word == "do" || word == "switch";
}

std::set<std::string> structural_terms(std::span<const Token> tokens) {
  return StructureWalker(tokens).run();
}

StructuralFingerprint compute_fingerprint(const CodeSnippet& snippet) {
  const auto tokens = tokenize(snippet.code, snippet.language);
  return {structural_terms(tokens), snippet.id};
}

std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t shared = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++shared;
      ++ia;
      ++ib;
    }
  }
  return shared;
}

double similarity(const StructuralFingerprint& a, const StructuralFingerprint& b) {
  const std::size_t larger = std::max(a.size(), b.size());
  if (larger == 0) return 0.0;
  return static_cast<double>(intersection_size(a.terms, b.terms)) / static_cast<double>(larger);
}

void require_ratio(double threshold, std::string_view what) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError(std::string(what) + " must be in (0, 1], got " + std::to_string(threshold));
  }
}

bool is_duplicate(const StructuralFingerprint& a, const StructuralFingerprint& b,
                  double threshold) {
  require_ratio(threshold, "duplicate threshold");
  return similarity(a, b) >= threshold;
}

}  // namespace cvar
