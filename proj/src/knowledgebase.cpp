#include "cvar/knowledgebase.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cvar/error.hpp"
#include "cvar/io.hpp"
#include "cvar/kernels.hpp"

namespace cvar {
namespace {

constexpr int kKbVersion = 1;

std::string exact_key(const KnowledgeTriple& t) {
  std::string key = t.property;
  for (const auto& term : t.fingerprint.terms) {
    key += '\x1f';
    key += term;
  }
  return key;
}

void absorb(KnowledgeTriple& group, const KnowledgeTriple& member) {
  group.score_sum += member.score_sum;
  group.occurrence_count += member.occurrence_count;
}

// Set-equality classes: a hash map replaces the pairwise scan.
std::vector<KnowledgeTriple> merge_exact(const std::vector<KnowledgeTriple>& triples) {
  std::vector<KnowledgeTriple> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& t : triples) {
    if (t.fingerprint.empty()) {  // similarity(∅, ∅) = 0: never a duplicate
      groups.push_back(t);
      continue;
    }
    const auto [it, inserted] = slot.try_emplace(exact_key(t), groups.size());
    if (inserted) {
      groups.push_back(t);
    } else {
      absorb(groups[it->second], t);
    }
  }
  return groups;
}

std::vector<KnowledgeTriple> merge_greedy(const std::vector<KnowledgeTriple>& triples,
                                          double threshold) {
  std::vector<KnowledgeTriple> groups;
  for (const auto& t : triples) {
    const std::size_t g = kernels::first_duplicate(groups, t.fingerprint, t.property, threshold);
    if (g == kernels::kNoGroup) {
      groups.push_back(t);
    } else {
      absorb(groups[g], t);
    }
  }
  return groups;
}

nlohmann::json triple_json(const KnowledgeTriple& t) {
  return {{"fingerprint", t.fingerprint.terms},
          {"property", t.property},
          {"score_sum", t.score_sum},
          {"count", t.occurrence_count},
          {"rep_id", t.representative_snippet_id}};
}

}  // namespace

bool KnowledgeBase::has_property(std::string_view name) const {
  return std::find(properties.begin(), properties.end(), name) != properties.end();
}

KnowledgeBase build_knowledgebase(std::span<const Post> corpus, const PropertyLexicon& lexicon) {
  if (corpus.empty()) throw PreconditionError("build_knowledgebase: empty corpus");
  KnowledgeBase kb;
  kb.lexicon_digest = lexicon.digest();
  kb.properties = lexicon.names();
  kb.triples = kernels::mine_triples(corpus, lexicon);
  return kb;
}

KnowledgeBase compress(const KnowledgeBase& kb, double threshold) {
  require_ratio(threshold, "dedup threshold");
  KnowledgeBase out;
  out.dedup_threshold = threshold;
  out.lexicon_digest = kb.lexicon_digest;
  out.properties = kb.properties;
  out.compressed = true;
  out.triples = threshold == 1.0 ? merge_exact(kb.triples) : merge_greedy(kb.triples, threshold);
  return out;
}

std::map<std::string, double> lookup(const KnowledgeBase& kb, const StructuralFingerprint& query,
                                     double threshold) {
  if (!kb.compressed) throw PreconditionError("lookup: knowledgebase is not compressed");
  require_ratio(threshold, "lookup threshold");
  std::map<std::string, double> out;
  for (const auto& property : kb.properties) {
    if (const auto m = kernels::best_match(kb.triples, query, property, threshold)) {
      out[property] = kb.triples[m->index].mean_score();
    }
  }
  return out;
}

std::string serialize_knowledgebase(const KnowledgeBase& kb) {
  std::string out = nlohmann::json{{"version", kKbVersion},
                                   {"lexicon_digest", kb.lexicon_digest},
                                   {"dedup_threshold", kb.dedup_threshold},
                                   {"compressed", kb.compressed},
                                   {"properties", kb.properties}}
                        .dump();
  out += '\n';
  for (const auto& t : kb.triples) {
    out += triple_json(t).dump();
    out += '\n';
  }
  return out;
}

KnowledgeBase parse_knowledgebase(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("knowledgebase: missing header");
  KnowledgeBase kb;
  std::size_t line_no = 1;
  try {
    const auto header = nlohmann::json::parse(line);
    if (header.at("version") != kKbVersion) {
      throw ParseError("knowledgebase: unsupported version " + header.at("version").dump());
    }
    kb.lexicon_digest = header.at("lexicon_digest").get<std::string>();
    kb.dedup_threshold = header.at("dedup_threshold").get<double>();
    kb.compressed = header.value("compressed", true);
    kb.properties = header.at("properties").get<std::vector<std::string>>();
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto rec = nlohmann::json::parse(line);
      KnowledgeTriple t;
      for (const auto& term : rec.at("fingerprint")) t.fingerprint.terms.insert(term.get<std::string>());
      t.property = rec.at("property").get<std::string>();
      t.score_sum = rec.at("score_sum").get<std::int64_t>();
      t.occurrence_count = rec.at("count").get<std::int64_t>();
      t.representative_snippet_id = rec.at("rep_id").get<std::string>();
      t.fingerprint.source_snippet_id = t.representative_snippet_id;
      if (t.occurrence_count < 1) {
        throw ParseError("knowledgebase line " + std::to_string(line_no) + ": count must be >= 1");
      }
      kb.triples.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("knowledgebase line " + std::to_string(line_no) + ": " + e.what());
  }
  require_ratio(kb.dedup_threshold, "knowledgebase dedup_threshold");
  return kb;
}

void save_knowledgebase(const KnowledgeBase& kb, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_knowledgebase(kb));
}

KnowledgeBase load_knowledgebase(const std::filesystem::path& path) {
  return parse_knowledgebase(read_file(path));
}

std::string canonical_groups(const KnowledgeBase& kb) {
  std::vector<std::string> lines;
  lines.reserve(kb.triples.size());
  for (const auto& t : kb.triples) {
    lines.push_back(nlohmann::json{{"property", t.property},
                                   {"fingerprint", t.fingerprint.terms},
                                   {"score_sum", t.score_sum},
                                   {"count", t.occurrence_count}}
                        .dump());
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace cvar
