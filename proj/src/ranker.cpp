#include "cvar/ranker.hpp"

#include <algorithm>

#include "cvar/error.hpp"
#include "cvar/kernels.hpp"

namespace cvar {
namespace {

double prop_or_zero(const SearchResult& r) { return r.property_score.value_or(0.0); }

bool by_property(const SearchResult& a, const SearchResult& b) {
  if (prop_or_zero(a) != prop_or_zero(b)) return prop_or_zero(a) > prop_or_zero(b);
  if (a.base_score != b.base_score) return a.base_score > b.base_score;
  return a.snippet.id < b.snippet.id;
}

std::vector<double> min_max(const std::vector<double>& xs) {
  std::vector<double> out(xs.size(), 0.0);
  if (xs.empty()) return out;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*hi == *lo) return out;
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - *lo) / (*hi - *lo);
  return out;
}

void blend_sort(std::vector<SearchResult>& results, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("blend lambda must lie in [0, 1]");
  std::vector<double> base;
  std::vector<double> prop;
  for (const auto& r : results) {
    base.push_back(r.base_score);
    prop.push_back(prop_or_zero(r));
  }
  const auto nb = min_max(base);
  const auto np = min_max(prop);
  std::vector<std::size_t> order(results.size());
  std::vector<double> blended(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    order[i] = i;
    blended[i] = lambda * nb[i] + (1.0 - lambda) * np[i];
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (blended[a] != blended[b]) return blended[a] > blended[b];
    if (results[a].base_score != results[b].base_score) {
      return results[a].base_score > results[b].base_score;
    }
    return results[a].snippet.id < results[b].snippet.id;
  });
  std::vector<SearchResult> sorted;
  sorted.reserve(results.size());
  for (const auto i : order) sorted.push_back(std::move(results[i]));
  results = std::move(sorted);
}

}  // namespace

void Query::validate() const {
  if (!has_content(phrase)) throw PreconditionError("query phrase is blank");
  if (top_k < 1) throw PreconditionError("top_k must be >= 1");
  require_ratio(het_threshold, "het_threshold");
}

SearchIndex::SearchIndex(InvertedIndex index, std::vector<CodeSnippet> snippets)
    : index_(std::move(index)), snippets_(std::move(snippets)) {
  const auto fps = kernels::fingerprint_all(snippets_);
  fingerprints_.reserve(fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    StructuralFingerprint fp = fps[i].value_or(StructuralFingerprint{});
    fp.source_snippet_id = snippets_[i].id;
    fingerprints_.push_back(std::move(fp));
  }
}

SearchIndex SearchIndex::build(const Corpus& corpus) {
  return SearchIndex(InvertedIndex::build(corpus), corpus.snippets());
}

SearchIndex SearchIndex::load(const std::filesystem::path& store_dir) {
  const Corpus corpus = load_corpus(store_dir);
  InvertedIndex index = InvertedIndex::load(store_dir);
  auto snippets = corpus.snippets();
  if (snippets.size() != index.doc_count()) {
    throw ParseError("index in " + store_dir.string() + " does not match its corpus");
  }
  for (std::size_t i = 0; i < snippets.size(); ++i) {
    if (snippets[i].id != index.doc_ids()[i]) {
      throw ParseError("index in " + store_dir.string() + " does not match its corpus");
    }
  }
  return SearchIndex(std::move(index), std::move(snippets));
}

std::vector<SearchResult> base_rank(const Query& query, const SearchIndex& index,
                                    const Bm25Params& params, std::size_t limit) {
  params.validate();
  const auto terms = index_terms(query.phrase);
  if (terms.empty()) throw EmptyQueryError("query '" + query.phrase + "' has no searchable terms");
  const auto scores = kernels::bm25_scores(index.index(), terms, params);
  std::vector<SearchResult> out;
  for (std::size_t d = 0; d < scores.size(); ++d) {
    if (scores[d] <= 0.0) continue;
    out.push_back({index.snippets()[d], scores[d], std::nullopt, 0, index.fingerprints()[d]});
  }
  std::sort(out.begin(), out.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.base_score != b.base_score) return a.base_score > b.base_score;
    return a.snippet.id < b.snippet.id;
  });
  if (out.size() > limit) out.resize(limit);
  return out;
}

std::vector<SearchResult> boost_rank(std::vector<SearchResult> results, const Query& query,
                                     const KnowledgeBase& kb, const BoostOptions& options) {
  if (!kb.compressed) throw PreconditionError("boost_rank: knowledgebase is not compressed");
  for (const auto& p : query.desired_properties) {
    if (!kb.has_property(p)) throw UnknownPropertyError("unknown property '" + p + "'");
  }
  if (query.desired_properties.empty()) return results;
  require_ratio(options.lookup_threshold, "lookup_threshold");

  bool any_hit = false;
  for (auto& r : results) {
    const auto found = lookup(kb, r.fingerprint, options.lookup_threshold);
    double sum = 0.0;
    bool hit = false;
    for (const auto& p : query.desired_properties) {
      if (const auto it = found.find(p); it != found.end()) {
        sum += it->second;
        hit = true;
      }
    }
    r.property_score = hit ? std::optional<double>(sum) : std::nullopt;
    any_hit = any_hit || hit;
  }
  if (!any_hit) return results;
  if (options.blend_lambda) {
    blend_sort(results, *options.blend_lambda);
  } else {
    std::stable_sort(results.begin(), results.end(), by_property);
  }
  return results;
}

std::vector<SearchResult> heterogeneity_filter(std::span<const SearchResult> results,
                                               double threshold) {
  require_ratio(threshold, "het_threshold");
  std::vector<SearchResult> kept;
  for (const auto& r : results) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const SearchResult& k) {
      return k.fingerprint.terms == r.fingerprint.terms ||
             similarity(k.fingerprint, r.fingerprint) >= threshold;
    });
    if (!dup) kept.push_back(r);
  }
  return kept;
}

std::vector<SearchResult> search(const Query& query, const SearchIndex& index,
                                 const KnowledgeBase& kb, const Config& config,
                                 std::optional<double> blend_lambda) {
  query.validate();
  config.validate(query.top_k);
  auto results = base_rank(query, index, config.bm25, config.candidate_pool);
  results = boost_rank(std::move(results), query, kb, {config.lookup_threshold, blend_lambda});
  if (query.heterogeneity_enabled) results = heterogeneity_filter(results, query.het_threshold);
  if (results.size() > query.top_k) results.resize(query.top_k);
  for (std::size_t i = 0; i < results.size(); ++i) results[i].final_rank = i + 1;
  return results;
}

nlohmann::json results_to_json(std::span<const SearchResult> results) {
  auto out = nlohmann::json::array();
  for (const auto& r : results) {
    out.push_back({{"rank", r.final_rank},
                   {"snippet_id", r.snippet.id},
                   {"base_score", r.base_score},
                   {"property_score", r.property_score ? nlohmann::json(*r.property_score)
                                                       : nlohmann::json(nullptr)},
                   {"fingerprint", r.fingerprint.terms}});
  }
  return out;
}

}  // namespace cvar
