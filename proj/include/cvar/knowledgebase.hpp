#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvar/fingerprint.hpp"
#include "cvar/lexicon.hpp"
#include "cvar/scoring.hpp"

namespace cvar {

/// (snippet structure, property, aggregated score). The mean is derived from
/// score_sum / occurrence_count and never stored.
struct KnowledgeTriple {
  StructuralFingerprint fingerprint;
  std::string property;
  std::int64_t score_sum = 0;
  std::int64_t occurrence_count = 1;
  std::string representative_snippet_id;

  double mean_score() const {
    return static_cast<double>(score_sum) / static_cast<double>(occurrence_count);
  }

  friend bool operator==(const KnowledgeTriple&, const KnowledgeTriple&) = default;
};

struct KnowledgeBase {
  std::vector<KnowledgeTriple> triples;
  double dedup_threshold = 1.0;
  std::string lexicon_digest;
  /// Property names of the lexicon the base was mined with, in lexicon order.
  std::vector<std::string> properties;
  bool compressed = false;

  bool has_property(std::string_view name) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

/// One triple per (snippet, property), scored from the snippet's post, in
/// corpus order. Snippets with blank code are skipped with a warning.
/// Throws PreconditionError on an empty corpus.
KnowledgeBase build_knowledgebase(std::span<const Post> corpus, const PropertyLexicon& lexicon);

/// Greedy earliest-first merge: each triple joins the first surviving group
/// of the same property whose representative fingerprint it duplicates at
/// `threshold`, adding score_sum and occurrence_count. The representative is
/// the earliest member. Below 1.0 similarity is not transitive, so the result
/// can depend on ingestion order; at 1.0 it cannot.
///
/// Throws ConfigError for a threshold outside (0, 1].
KnowledgeBase compress(const KnowledgeBase& kb, double threshold);

/// Mean score per property of the most similar triple at or above
/// `threshold` (earliest wins ties). Properties without a match are absent.
/// Throws PreconditionError if `kb` is not compressed.
std::map<std::string, double> lookup(const KnowledgeBase& kb, const StructuralFingerprint& query,
                                     double threshold);

/// JSONL: a header `{version, lexicon_digest, dedup_threshold, compressed,
/// properties}` then one `{fingerprint, property, score_sum, count, rep_id}`
/// per triple. parse(serialize(kb)) == kb.
std::string serialize_knowledgebase(const KnowledgeBase& kb);
KnowledgeBase parse_knowledgebase(std::string_view text);

void save_knowledgebase(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase load_knowledgebase(const std::filesystem::path& path);

/// Sorted `(property, fingerprint, score_sum, count)` lines; representative
/// ids are left out. Two bases that group the same way compare equal.
std::string canonical_groups(const KnowledgeBase& kb);

}  // namespace cvar
