#include "cvar/corpus.hpp"

#include <istream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "cvar/error.hpp"
#include "cvar/io.hpp"

namespace cvar {
namespace {

constexpr int kCorpusVersion = 1;

std::string_view trim_left(std::string_view s, std::size_t max_spaces) {
  std::size_t i = 0;
  while (i < s.size() && i < max_spaces && s[i] == ' ') ++i;
  return s.substr(i);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string id_field(const nlohmann::json& record, const char* key) {
  const auto& v = record.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(std::string(key) + " must be a string or integer");
}

Language detect_language(const std::string& info, const std::vector<std::string>& tags) {
  if (!info.empty()) {
    const auto word = info.substr(0, info.find_first_of(" \t{"));
    if (auto lang = parse_language(word)) return *lang;
  }
  for (const auto& tag : tags) {
    if (auto lang = parse_language(tag)) return *lang;
  }
  return Language::unknown;
}

nlohmann::json document_json(const CorpusDocument& doc) {
  auto snippets = nlohmann::json::array();
  for (const auto& s : doc.snippets) {
    snippets.push_back(
        {{"snippet_id", s.id}, {"language", to_string(s.language)}, {"code", s.code}});
  }
  return {{"post_id", doc.post_id},
          {"title", doc.title},
          {"body_prose", doc.body_prose},
          {"tags", doc.tags},
          {"snippets", std::move(snippets)}};
}

}  // namespace

std::string CorpusDocument::prose() const {
  if (title.empty()) return body_prose;
  if (body_prose.empty()) return title;
  return title + "\n" + body_prose;
}

Post CorpusDocument::to_post() const { return {post_id, prose(), snippets}; }

std::vector<Post> Corpus::posts() const {
  std::vector<Post> out;
  out.reserve(documents.size());
  for (const auto& d : documents) out.push_back(d.to_post());
  return out;
}

std::vector<CodeSnippet> Corpus::snippets() const {
  std::vector<CodeSnippet> out;
  for (const auto& d : documents) out.insert(out.end(), d.snippets.begin(), d.snippets.end());
  return out;
}

std::size_t Corpus::snippet_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.snippets.size();
  return n;
}

SplitBody split_fenced_code(std::string_view body) {
  SplitBody out;
  std::istringstream lines{std::string(body)};
  std::string line;
  bool in_fence = false;
  FencedBlock current;
  while (std::getline(lines, line)) {
    const auto stripped = trim_left(line, 3);
    if (stripped.starts_with("```")) {
      if (in_fence) {
        out.blocks.push_back(std::move(current));
        current = {};
        in_fence = false;
      } else {
        current.info = trim(stripped.substr(3));
        in_fence = true;
      }
      continue;
    }
    if (in_fence) {
      current.code += line;
      current.code += '\n';
    } else {
      for (const char c : line) {
        if (c != '`') out.prose += c;
      }
      out.prose += '\n';
    }
  }
  if (in_fence) out.blocks.push_back(std::move(current));
  out.prose = trim(out.prose);
  return out;
}

Corpus ingest(std::istream& jsonl) {
  Corpus corpus;
  std::unordered_set<std::string> post_ids;
  std::unordered_set<std::string> snippet_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(jsonl, line)) {
    ++line_no;
    if (!has_content(line)) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    CorpusDocument doc;
    std::string body;
    try {
      const auto record = nlohmann::json::parse(line);
      doc.post_id = id_field(record, "post_id");
      body = record.at("body").get<std::string>();
      doc.title = record.value("title", std::string{});
      doc.tags = record.value("tags", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + e.what());
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
    if (doc.post_id.empty()) throw ParseError(where + "empty post_id");
    if (!post_ids.insert(doc.post_id).second) {
      throw ParseError(where + "duplicate post_id '" + doc.post_id + "'");
    }
    auto split = split_fenced_code(body);
    doc.body_prose = std::move(split.prose);
    for (auto& block : split.blocks) {
      if (!has_content(block.code)) {
        spdlog::warn("{}post {}: skipping empty code block", where, doc.post_id);
        continue;
      }
      CodeSnippet snippet;
      snippet.id = doc.post_id + "#" + std::to_string(doc.snippets.size() + 1);
      snippet.code = std::move(block.code);
      snippet.language = detect_language(block.info, doc.tags);
      snippet.post_id = doc.post_id;
      if (!snippet_ids.insert(snippet.id).second) {
        throw ParseError(where + "snippet id '" + snippet.id + "' collides with another post");
      }
      doc.snippets.push_back(std::move(snippet));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out = nlohmann::json{{"version", kCorpusVersion},
                                   {"kind", "corpus"},
                                   {"documents", corpus.documents.size()}}
                        .dump();
  out += '\n';
  for (const auto& doc : corpus.documents) {
    out += document_json(doc).dump();
    out += '\n';
  }
  return out;
}

Corpus parse_corpus(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("corpus store: missing header");
  Corpus corpus;
  std::size_t expected = 0;
  try {
    const auto header = nlohmann::json::parse(line);
    if (header.at("kind") != "corpus" || header.at("version") != kCorpusVersion) {
      throw ParseError("corpus store: unsupported header " + line);
    }
    expected = header.at("documents").get<std::size_t>();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto rec = nlohmann::json::parse(line);
      CorpusDocument doc;
      doc.post_id = rec.at("post_id").get<std::string>();
      doc.title = rec.at("title").get<std::string>();
      doc.body_prose = rec.at("body_prose").get<std::string>();
      doc.tags = rec.at("tags").get<std::vector<std::string>>();
      for (const auto& s : rec.at("snippets")) {
        const auto lang = parse_language(s.at("language").get<std::string>());
        if (!lang) throw ParseError("corpus store line " + std::to_string(line_no) + ": bad language");
        doc.snippets.push_back({s.at("snippet_id").get<std::string>(),
                                s.at("code").get<std::string>(), *lang, doc.post_id});
      }
      corpus.documents.push_back(std::move(doc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corpus store: ") + e.what());
  }
  if (corpus.documents.size() != expected) {
    throw ParseError("corpus store: header announces " + std::to_string(expected) +
                     " documents, found " + std::to_string(corpus.documents.size()));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& store_dir) {
  std::filesystem::create_directories(store_dir);
  write_file_atomic(store_dir / kCorpusFile, serialize_corpus(corpus));
}

Corpus load_corpus(const std::filesystem::path& store_dir) {
  const auto path = store_dir / kCorpusFile;
  if (!std::filesystem::exists(path)) throw IoError("no corpus store at " + store_dir.string());
  return parse_corpus(read_file(path));
}

}  // namespace cvar
