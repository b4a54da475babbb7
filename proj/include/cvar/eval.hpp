#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cvar {

inline constexpr std::size_t kDefaultCutoff = 10;

/// Binary relevance per query: snippet id -> relevant.
struct RelevanceJudgments {
  std::map<std::string, std::map<std::string, bool>> by_query;

  std::size_t total_relevant(const std::string& query) const;
};

/// Lines `query_id<TAB>snippet_id<TAB>0|1`. Blank lines and lines starting
/// with '#' are skipped. Throws ParseError naming the line.
RelevanceJudgments parse_judgments(std::string_view text);
RelevanceJudgments load_judgments(const std::filesystem::path& path);

/// Ranked snippet ids per query.
struct Run {
  std::map<std::string, std::vector<std::string>> ranked;
};

/// Lines `query_id<TAB>rank<TAB>snippet_id`, in any order; ranks are
/// positive and unique within a query. Throws ParseError naming the line.
Run parse_run(std::string_view text);
Run load_run(const std::filesystem::path& path);
std::string format_run(const Run& run);

/// Σ precision@k over relevant ranks k <= cutoff, divided by
/// min(total relevant, cutoff). Ids without a judgment are not relevant.
/// Throws UndefinedApError when nothing is relevant and PreconditionError
/// for a zero cutoff.
double average_precision(std::span<const std::string> ranked_ids,
                         const std::map<std::string, bool>& judgments,
                         std::size_t cutoff = kDefaultCutoff);

/// Arithmetic mean. Throws PreconditionError for an empty list.
double mean_average_precision(std::span<const double> per_query_ap);

struct QueryComparison {
  std::string query;
  double ap_before = 0.0;
  double ap_after = 0.0;
};

struct EvalReport {
  std::vector<QueryComparison> rows;
  double map_before = 0.0;
  double map_after = 0.0;
  /// Queries left out of both MAPs because they have no relevant snippet.
  std::vector<std::string> skipped;

  /// Aligned text table: one row per query, then the MAP row.
  std::string to_table() const;
  nlohmann::json to_json() const;
};

/// Per-query AP of both runs and the two MAPs. Throws PreconditionError
/// listing the difference when the runs cover different queries, and when
/// no query has a relevant snippet.
EvalReport compare_runs(const Run& before, const Run& after, const RelevanceJudgments& judgments,
                        std::size_t cutoff = kDefaultCutoff);

}  // namespace cvar
