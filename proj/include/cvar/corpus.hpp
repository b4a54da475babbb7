#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cvar/scoring.hpp"
#include "cvar/snippet.hpp"

namespace cvar {

/// One ingested post. `body_prose` never contains fenced code: ingestion
/// moves each fenced block into `snippets`.
struct CorpusDocument {
  std::string post_id;
  std::string title;
  std::string body_prose;
  std::vector<std::string> tags;
  std::vector<CodeSnippet> snippets;

  /// Title and body prose joined, the text that property scores are mined from.
  std::string prose() const;
  Post to_post() const;

  friend bool operator==(const CorpusDocument&, const CorpusDocument&) = default;
};

struct Corpus {
  std::vector<CorpusDocument> documents;

  std::vector<Post> posts() const;
  /// Every snippet, in document order.
  std::vector<CodeSnippet> snippets() const;
  std::size_t snippet_count() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct FencedBlock {
  std::string info;  // text after the opening fence, e.g. "java"
  std::string code;
};

struct SplitBody {
  std::string prose;
  std::vector<FencedBlock> blocks;
};

/// Separates ``` fenced blocks from the surrounding prose. Inline backticks
/// are dropped from the prose; an unterminated fence runs to the end.
SplitBody split_fenced_code(std::string_view body);

/// Reads raw posts, one JSON object per line with at least `post_id` and
/// `body` (optional `title`, `tags`). Snippet ids are `<post_id>#<ordinal>`,
/// counting from 1. Snippet language comes from the fence info string, then
/// the tags, else unknown.
///
/// Throws ParseError naming the line for malformed records or a repeated
/// post_id.
Corpus ingest(std::istream& jsonl);

/// Normalized corpus store: a version header line, then one document per line.
std::string serialize_corpus(const Corpus& corpus);
Corpus parse_corpus(std::string_view text);

inline constexpr std::string_view kCorpusFile = "corpus.jsonl";
inline constexpr std::string_view kIndexFile = "index.json";

void save_corpus(const Corpus& corpus, const std::filesystem::path& store_dir);
Corpus load_corpus(const std::filesystem::path& store_dir);

}  // namespace cvar
