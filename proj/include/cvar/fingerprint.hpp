#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>

#include "cvar/snippet.hpp"
#include "cvar/tokenizer.hpp"

namespace cvar {

/// The set of structural terms of a snippet. A term is an operator prefixed
/// by the innermost enclosing control keyword (`if<=`, `for++`), a bare
/// operator at top level (`*`), or a bare loop/switch keyword for a construct
/// that contains no operator at all (`while`).
struct StructuralFingerprint {
  std::set<std::string> terms;
  std::string source_snippet_id;

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }

  friend bool operator==(const StructuralFingerprint&, const StructuralFingerprint&) = default;
};

/// Operators that carry structure. Plain `=` is absent: assignments are
/// ignored.
bool is_structural_operator(std::string_view op);

/// `if`, `for`, `while`, `do`, `switch`.
bool is_control_keyword(std::string_view word);

/// Structural terms of an already tokenized snippet.
///
/// Control scoping:
///  - the condition and every branch of an if/else statement share one `if`
///    scope;
///  - an else-less `if` whose branch ends in return/throw/break/continue/goto
///    is a guard clause: the rest of the enclosing block is its implicit
///    else and stays in the `if` scope;
///  - the `while (...)` tail of a do-while belongs to the `do` scope;
///  - nested constructs prefix with the innermost keyword only;
///  - unbalanced braces close every open scope at end of input.
std::set<std::string> structural_terms(std::span<const Token> tokens);

/// Throws PreconditionError if the snippet's code is blank.
StructuralFingerprint compute_fingerprint(const CodeSnippet& snippet);

/// |a ∩ b| / max(|a|, |b|); 0 when both are empty.
double similarity(const StructuralFingerprint& a, const StructuralFingerprint& b);

/// Shared size of two term sets.
std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b);

/// Throws ConfigError unless 0 < threshold <= 1.
void require_ratio(double threshold, std::string_view what);

/// similarity(a, b) >= threshold. Throws ConfigError for a threshold outside (0, 1].
bool is_duplicate(const StructuralFingerprint& a, const StructuralFingerprint& b, double threshold);

}  // namespace cvar
