#include "cvar/scoring.hpp"

#include <algorithm>
#include <cctype>

#include "cvar/error.hpp"
#include "cvar/stemmer.hpp"

namespace cvar {
namespace {

bool all_digits(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::int64_t sum_counts(const std::map<std::string, std::int64_t>& counts,
                        const std::set<std::string>& terms) {
  std::int64_t total = 0;
  for (const auto& t : terms) {
    if (const auto it = counts.find(t); it != counts.end()) total += it->second;
  }
  return total;
}

}  // namespace

std::int64_t ScoreVector::at_or_zero(const std::string& property) const {
  const auto it = scores.find(property);
  return it == scores.end() ? 0 : it->second;
}

std::map<std::string, std::int64_t> stem_counts(std::string_view prose) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& token : word_tokens(prose)) {
    if (all_digits(token)) continue;
    ++counts[stem(token)];
  }
  return counts;
}

std::int64_t term_frequency(std::string_view prose, const std::set<std::string>& terms) {
  if (terms.empty()) throw PreconditionError("term_frequency: empty term set");
  return sum_counts(stem_counts(prose), terms);
}

std::int64_t property_score(const std::map<std::string, std::int64_t>& counts,
                            const PropertyEntry& entry) {
  return sum_counts(counts, entry.synonyms) - sum_counts(counts, entry.antonyms);
}

std::int64_t property_score(const Post& post, const PropertyEntry& entry) {
  return property_score(stem_counts(post.prose), entry);
}

ScoreVector score_vector(const Post& post, const PropertyLexicon& lexicon) {
  ScoreVector out;
  if (lexicon.empty()) return out;
  const auto counts = stem_counts(post.prose);
  for (const auto& entry : lexicon.entries()) out.scores[entry.name] = property_score(counts, entry);
  return out;
}

}  // namespace cvar
