#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvar/config.hpp"
#include "cvar/corpus.hpp"
#include "cvar/fingerprint.hpp"
#include "cvar/index.hpp"
#include "cvar/knowledgebase.hpp"

namespace cvar {

struct Query {
  std::string phrase;
  std::vector<std::string> desired_properties;
  std::size_t top_k = 10;
  bool heterogeneity_enabled = true;
  double het_threshold = 0.8;

  /// Throws PreconditionError for a blank phrase or top_k of 0 and
  /// ConfigError for a threshold outside (0, 1].
  void validate() const;
};

struct SearchResult {
  CodeSnippet snippet;
  double base_score = 0.0;
  std::optional<double> property_score;
  std::size_t final_rank = 0;
  StructuralFingerprint fingerprint;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Snippets, their fingerprints and the inverted index, aligned by document
/// number.
class SearchIndex {
 public:
  SearchIndex() = default;

  static SearchIndex build(const Corpus& corpus);
  /// Reads the corpus and index files of a store directory. Throws IoError
  /// when either is missing and ParseError when they disagree.
  static SearchIndex load(const std::filesystem::path& store_dir);

  const InvertedIndex& index() const { return index_; }
  const std::vector<CodeSnippet>& snippets() const { return snippets_; }
  const std::vector<StructuralFingerprint>& fingerprints() const { return fingerprints_; }

 private:
  SearchIndex(InvertedIndex index, std::vector<CodeSnippet> snippets);

  InvertedIndex index_;
  std::vector<CodeSnippet> snippets_;
  std::vector<StructuralFingerprint> fingerprints_;
};

/// BM25 over code and post prose. Only snippets sharing a term with the
/// query are returned, best first, ties by snippet id, at most `limit`.
/// Throws EmptyQueryError when the phrase has no word tokens.
std::vector<SearchResult> base_rank(const Query& query, const SearchIndex& index,
                                    const Bm25Params& params,
                                    std::size_t limit = std::numeric_limits<std::size_t>::max());

struct BoostOptions {
  double lookup_threshold = 0.8;
  /// When set, order by lambda * norm(base) + (1 - lambda) * norm(property)
  /// with min-max normalization over the list instead of by property score.
  std::optional<double> blend_lambda;
};

/// Sets property_score to the summed knowledgebase means of the desired
/// properties (absent when every lookup misses) and reorders by property
/// score, then base score, then snippet id. Missing scores sort as 0. The
/// input order is kept when there are no desired properties or no lookup
/// hits.
///
/// Throws UnknownPropertyError for a property the knowledgebase was not
/// mined with and PreconditionError for an uncompressed knowledgebase.
std::vector<SearchResult> boost_rank(std::vector<SearchResult> results, const Query& query,
                                     const KnowledgeBase& kb, const BoostOptions& options = {});

/// Keeps a result only if its fingerprint is below `threshold` similarity to
/// every result kept before it. Equal fingerprints always count as
/// duplicates, including two empty ones.
/// Throws ConfigError for a threshold outside (0, 1].
std::vector<SearchResult> heterogeneity_filter(std::span<const SearchResult> results,
                                               double threshold);

/// base_rank over the candidate pool, boost_rank, the heterogeneity filter
/// when enabled, then the first top_k with ranks 1..k.
std::vector<SearchResult> search(const Query& query, const SearchIndex& index,
                                 const KnowledgeBase& kb, const Config& config,
                                 std::optional<double> blend_lambda = std::nullopt);

/// `[{rank, snippet_id, base_score, property_score, fingerprint}, ...]`
nlohmann::json results_to_json(std::span<const SearchResult> results);

}  // namespace cvar
