#include "cvar/kernels.hpp"

#include <algorithm>
#include <limits>

#include <spdlog/spdlog.h>

namespace cvar::kernels {
namespace {

std::optional<StructuralFingerprint> fingerprint_or_skip(const CodeSnippet& snippet) {
  if (!has_content(snippet.code)) {
    spdlog::warn("snippet '{}' has no code; skipped", snippet.id);
    return std::nullopt;
  }
  return compute_fingerprint(snippet);
}

std::vector<KnowledgeTriple> triples_of_post(const Post& post, const PropertyLexicon& lexicon) {
  std::vector<KnowledgeTriple> out;
  const ScoreVector scores = score_vector(post, lexicon);
  for (const auto& snippet : post.snippets) {
    auto fp = fingerprint_or_skip(snippet);
    if (!fp) continue;
    for (const auto& entry : lexicon.entries()) {
      out.push_back({*fp, entry.name, scores.at_or_zero(entry.name), 1, snippet.id});
    }
  }
  return out;
}

std::vector<std::string> unique_terms(std::span<const std::string> terms) {
  std::vector<std::string> out(terms.begin(), terms.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double term_weight(double idf, std::uint32_t tf, std::uint32_t doc_len, double avg_len,
                   const Bm25Params& p) {
  const double f = tf;
  const double norm = avg_len > 0.0 ? doc_len / avg_len : 0.0;
  return idf * f * (p.k1 + 1.0) / (f + p.k1 * (1.0 - p.b + p.b * norm));
}

std::vector<KnowledgeTriple> concat(std::vector<std::vector<KnowledgeTriple>>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<KnowledgeTriple> out;
  out.reserve(total);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<std::optional<StructuralFingerprint>> fingerprint_all(
    std::span<const CodeSnippet> snippets) {
  std::vector<std::optional<StructuralFingerprint>> out(snippets.size());
  const auto n = static_cast<std::ptrdiff_t>(snippets.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fingerprint_or_skip(snippets[i]);
  return out;
}

std::vector<KnowledgeTriple> mine_triples(std::span<const Post> posts,
                                          const PropertyLexicon& lexicon) {
  std::vector<std::vector<KnowledgeTriple>> parts(posts.size());
  const auto n = static_cast<std::ptrdiff_t>(posts.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) parts[i] = triples_of_post(posts[i], lexicon);
  return concat(parts);
}

std::optional<Match> best_match(std::span<const KnowledgeTriple> triples,
                                const StructuralFingerprint& query, std::string_view property,
                                double threshold) {
  Match best{kNoGroup, -1.0};
  const auto n = static_cast<std::ptrdiff_t>(triples.size());
#pragma omp parallel
  {
    Match local{kNoGroup, -1.0};
    // static schedule: each thread sees increasing indices, so strict > keeps
    // its earliest maximum
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& t = triples[i];
      if (t.property != property) continue;
      const double s = similarity(query, t.fingerprint);
      if (s >= threshold && s > local.similarity) local = {static_cast<std::size_t>(i), s};
    }
#pragma omp critical(cvar_best_match)
    {
      if (local.similarity > best.similarity ||
          (local.similarity == best.similarity && local.index < best.index)) {
        best = local;
      }
    }
  }
  if (best.index == kNoGroup) return std::nullopt;
  return best;
}

std::size_t first_duplicate(std::span<const KnowledgeTriple> groups,
                            const StructuralFingerprint& fp, std::string_view property,
                            double threshold) {
  std::size_t found = kNoGroup;
  const auto n = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(static) reduction(min : found)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& g = groups[i];
    if (g.property == property && similarity(g.fingerprint, fp) >= threshold) {
      found = std::min(found, static_cast<std::size_t>(i));
    }
  }
  return found;
}

std::vector<double> bm25_scores(const InvertedIndex& index, std::span<const std::string> terms,
                                const Bm25Params& params) {
  std::vector<double> scores(index.doc_count(), 0.0);
  const double avg = index.average_length();
  for (const auto& term : unique_terms(terms)) {
    const auto* list = index.postings(term);
    if (list == nullptr) continue;
    const double idf = index.idf(term);
    const auto n = static_cast<std::ptrdiff_t>(list->size());
    // one posting per document within a term: no two iterations share a slot
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Posting& p = (*list)[i];
      scores[p.doc] += term_weight(idf, p.tf, index.doc_length(p.doc), avg, params);
    }
  }
  return scores;
}

namespace serial {

std::vector<std::optional<StructuralFingerprint>> fingerprint_all(
    std::span<const CodeSnippet> snippets) {
  std::vector<std::optional<StructuralFingerprint>> out;
  out.reserve(snippets.size());
  for (const auto& s : snippets) out.push_back(fingerprint_or_skip(s));
  return out;
}

std::vector<KnowledgeTriple> mine_triples(std::span<const Post> posts,
                                          const PropertyLexicon& lexicon) {
  std::vector<std::vector<KnowledgeTriple>> parts;
  parts.reserve(posts.size());
  for (const auto& post : posts) parts.push_back(triples_of_post(post, lexicon));
  return concat(parts);
}

std::optional<Match> best_match(std::span<const KnowledgeTriple> triples,
                                const StructuralFingerprint& query, std::string_view property,
                                double threshold) {
  std::optional<Match> best;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (triples[i].property != property) continue;
    const double s = similarity(query, triples[i].fingerprint);
    if (s >= threshold && (!best || s > best->similarity)) best = Match{i, s};
  }
  return best;
}

std::size_t first_duplicate(std::span<const KnowledgeTriple> groups,
                            const StructuralFingerprint& fp, std::string_view property,
                            double threshold) {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].property == property && similarity(groups[i].fingerprint, fp) >= threshold) {
      return i;
    }
  }
  return kNoGroup;
}

std::vector<double> bm25_scores(const InvertedIndex& index, std::span<const std::string> terms,
                                const Bm25Params& params) {
  std::vector<double> scores(index.doc_count(), 0.0);
  const double avg = index.average_length();
  for (const auto& term : unique_terms(terms)) {
    const auto* list = index.postings(term);
    if (list == nullptr) continue;
    const double idf = index.idf(term);
    for (const Posting& p : *list) {
      scores[p.doc] += term_weight(idf, p.tf, index.doc_length(p.doc), avg, params);
    }
  }
  return scores;
}

}  // namespace serial
}  // namespace cvar::kernels
