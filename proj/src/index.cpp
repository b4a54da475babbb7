#include "cvar/index.hpp"

#include <cmath>
#include <numeric>

#include "cvar/error.hpp"
#include "cvar/io.hpp"
#include "cvar/stemmer.hpp"

namespace cvar {
namespace {

constexpr int kIndexVersion = 1;

}  // namespace

void Bm25Params::validate() const {
  if (!(k1 > 0.0) || !std::isfinite(k1)) throw ConfigError("bm25 k1 must be > 0");
  if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("bm25 b must lie in [0, 1]");
}

std::vector<std::string> index_terms(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& token : word_tokens(text)) out.push_back(stem(token));
  return out;
}

std::string retrieval_text(const CodeSnippet& snippet, const CorpusDocument& post) {
  return snippet.code + "\n" + post.prose();
}

InvertedIndex InvertedIndex::build(const Corpus& corpus) {
  InvertedIndex index;
  for (const auto& doc : corpus.documents) {
    for (const auto& snippet : doc.snippets) {
      const auto id = static_cast<std::uint32_t>(index.doc_ids_.size());
      const auto terms = index_terms(retrieval_text(snippet, doc));
      std::map<std::string, std::uint32_t> tf;
      for (const auto& t : terms) ++tf[t];
      for (const auto& [term, count] : tf) index.postings_[term].push_back({id, count});
      index.doc_ids_.push_back(snippet.id);
      index.doc_lengths_.push_back(static_cast<std::uint32_t>(terms.size()));
    }
  }
  return index;
}

double InvertedIndex::average_length() const {
  if (doc_lengths_.empty()) return 0.0;
  const double total = std::accumulate(doc_lengths_.begin(), doc_lengths_.end(), 0.0);
  return total / static_cast<double>(doc_lengths_.size());
}

const std::vector<Posting>* InvertedIndex::postings(const std::string& term) const {
  const auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::size_t InvertedIndex::document_frequency(const std::string& term) const {
  const auto* list = postings(term);
  return list == nullptr ? 0 : list->size();
}

double InvertedIndex::idf(const std::string& term) const {
  const double n = static_cast<double>(doc_count());
  const double df = static_cast<double>(document_frequency(term));
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

nlohmann::json InvertedIndex::to_json() const {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [term, list] : postings_) {
    auto& arr = terms[term] = nlohmann::json::array();
    for (const auto& p : list) arr.push_back({p.doc, p.tf});
  }
  return {{"version", kIndexVersion},
          {"kind", "index"},
          {"doc_ids", doc_ids_},
          {"doc_lengths", doc_lengths_},
          {"postings", terms}};
}

InvertedIndex InvertedIndex::from_json(const nlohmann::json& doc) {
  InvertedIndex index;
  try {
    if (doc.at("version") != kIndexVersion) {
      throw ParseError("index: unsupported version " + doc.at("version").dump());
    }
    index.doc_ids_ = doc.at("doc_ids").get<std::vector<std::string>>();
    index.doc_lengths_ = doc.at("doc_lengths").get<std::vector<std::uint32_t>>();
    if (index.doc_ids_.size() != index.doc_lengths_.size()) {
      throw ParseError("index: doc_ids and doc_lengths differ in size");
    }
    for (const auto& [term, arr] : doc.at("postings").items()) {
      auto& list = index.postings_[term];
      for (const auto& p : arr) {
        const Posting posting{p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>()};
        if (posting.doc >= index.doc_ids_.size()) {
          throw ParseError("index: posting for '" + term + "' names unknown document");
        }
        list.push_back(posting);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("index: ") + e.what());
  }
  return index;
}

void InvertedIndex::save(const std::filesystem::path& store_dir) const {
  std::filesystem::create_directories(store_dir);
  write_file_atomic(store_dir / kIndexFile, to_json().dump() + "\n");
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& store_dir) {
  const auto path = store_dir / kIndexFile;
  if (!std::filesystem::exists(path)) throw IoError("no index at " + store_dir.string());
  try {
    return from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace cvar
