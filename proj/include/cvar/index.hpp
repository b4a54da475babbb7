#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvar/corpus.hpp"

namespace cvar {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  /// Throws ConfigError unless k1 > 0 and 0 <= b <= 1.
  void validate() const;
};

struct Posting {
  std::uint32_t doc;
  std::uint32_t tf;

  friend bool operator==(const Posting&, const Posting&) = default;
};

/// Stemmed word tokens of `text`, digits kept.
std::vector<std::string> index_terms(std::string_view text);

/// The text a snippet is retrieved by: its code followed by its post's prose.
std::string retrieval_text(const CodeSnippet& snippet, const CorpusDocument& post);

/// Postings over snippets (one document per snippet, in corpus order).
class InvertedIndex {
 public:
  InvertedIndex() = default;

  static InvertedIndex build(const Corpus& corpus);

  std::size_t doc_count() const { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::uint32_t doc_length(std::size_t doc) const { return doc_lengths_[doc]; }
  double average_length() const;

  /// nullptr when the term never occurs.
  const std::vector<Posting>* postings(const std::string& term) const;
  std::size_t document_frequency(const std::string& term) const;
  const std::map<std::string, std::vector<Posting>>& all_postings() const { return postings_; }

  /// Lucene-style idf, ln(1 + (N - df + 0.5) / (df + 0.5)); always positive.
  double idf(const std::string& term) const;

  nlohmann::json to_json() const;
  static InvertedIndex from_json(const nlohmann::json& doc);

  void save(const std::filesystem::path& store_dir) const;
  static InvertedIndex load(const std::filesystem::path& store_dir);

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  std::map<std::string, std::vector<Posting>> postings_;
};

}  // namespace cvar
