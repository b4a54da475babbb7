#pragma once

// Data-parallel inner loops of the pipeline. Each kernel has an OpenMP
// version (namespace kernels) and a plain sequential reference
// (kernels::serial) with the same signature. Results are identical,
// including floating-point bits: reductions combine in a fixed order.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvar/fingerprint.hpp"
#include "cvar/index.hpp"
#include "cvar/knowledgebase.hpp"
#include "cvar/lexicon.hpp"
#include "cvar/scoring.hpp"

namespace cvar::kernels {

/// Most similar triple for one property; `index` is the earliest on ties.
struct Match {
  std::size_t index;
  double similarity;
};

inline constexpr std::size_t kNoGroup = static_cast<std::size_t>(-1);

/// nullopt for snippets with blank code.
std::vector<std::optional<StructuralFingerprint>> fingerprint_all(
    std::span<const CodeSnippet> snippets);

/// Uncompressed triples in (post, snippet, property) order.
std::vector<KnowledgeTriple> mine_triples(std::span<const Post> posts,
                                          const PropertyLexicon& lexicon);

/// Best triple of `property` with similarity >= threshold.
std::optional<Match> best_match(std::span<const KnowledgeTriple> triples,
                                const StructuralFingerprint& query, std::string_view property,
                                double threshold);

/// Lowest index of a group of `property` that `fp` duplicates, or kNoGroup.
std::size_t first_duplicate(std::span<const KnowledgeTriple> groups,
                            const StructuralFingerprint& fp, std::string_view property,
                            double threshold);

/// BM25 score of every document for the (deduplicated) query terms.
std::vector<double> bm25_scores(const InvertedIndex& index, std::span<const std::string> terms,
                                const Bm25Params& params);

namespace serial {

std::vector<std::optional<StructuralFingerprint>> fingerprint_all(
    std::span<const CodeSnippet> snippets);

std::vector<KnowledgeTriple> mine_triples(std::span<const Post> posts,
                                          const PropertyLexicon& lexicon);

std::optional<Match> best_match(std::span<const KnowledgeTriple> triples,
                                const StructuralFingerprint& query, std::string_view property,
                                double threshold);

std::size_t first_duplicate(std::span<const KnowledgeTriple> groups,
                            const StructuralFingerprint& fp, std::string_view property,
                            double threshold);

std::vector<double> bm25_scores(const InvertedIndex& index, std::span<const std::string> terms,
                                const Bm25Params& params);

}  // namespace serial
}  // namespace cvar::kernels
