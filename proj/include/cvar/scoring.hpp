#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cvar/lexicon.hpp"
#include "cvar/snippet.hpp"

namespace cvar {

/// A discussion post: prose (title and body without code) plus the snippets
/// it carries. Every snippet's post_id equals the post id.
struct Post {
  std::string id;
  std::string prose;
  std::vector<CodeSnippet> snippets;
};

/// Integer score per property name.
struct ScoreVector {
  std::map<std::string, std::int64_t> scores;

  /// Missing properties count as 0.
  std::int64_t at_or_zero(const std::string& property) const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

/// Occurrence count of each stem in `prose`. Digit-only tokens are dropped:
/// lexicon terms are alphabetic.
std::map<std::string, std::int64_t> stem_counts(std::string_view prose);

/// Total occurrences in `prose` of tokens whose stem is in `terms`.
/// Throws PreconditionError if `terms` is empty.
std::int64_t term_frequency(std::string_view prose, const std::set<std::string>& terms);

/// Σ tf(synonyms) − Σ tf(antonyms) over the post prose. Negation is not
/// parsed: "not efficient" counts as "efficient".
std::int64_t property_score(const Post& post, const PropertyEntry& entry);

/// Same computation over precomputed stem counts.
std::int64_t property_score(const std::map<std::string, std::int64_t>& counts,
                            const PropertyEntry& entry);

/// One score per lexicon property; every snippet of the post shares it.
ScoreVector score_vector(const Post& post, const PropertyLexicon& lexicon);

}  // namespace cvar
