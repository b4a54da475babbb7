#include "cvar/eval.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <spdlog/spdlog.h>

#include "cvar/error.hpp"
#include "cvar/io.hpp"

namespace cvar {
namespace {

std::vector<std::string> tab_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename Fn>
void for_each_record(std::string_view text, std::string_view what, std::size_t fields, Fn&& fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = tab_fields(line);
    const auto fail = [&](const std::string& why) {
      throw ParseError(std::string(what) + " line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() != fields) fail("expected " + std::to_string(fields) + " tab-separated fields");
    if (std::any_of(f.begin(), f.end(), [](const auto& s) { return s.empty(); })) {
      fail("empty field");
    }
    fn(f, fail);
  }
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x;
  }
  return out;
}

}  // namespace

std::size_t RelevanceJudgments::total_relevant(const std::string& query) const {
  const auto it = by_query.find(query);
  if (it == by_query.end()) return 0;
  return static_cast<std::size_t>(
      std::count_if(it->second.begin(), it->second.end(), [](const auto& kv) { return kv.second; }));
}

RelevanceJudgments parse_judgments(std::string_view text) {
  RelevanceJudgments out;
  for_each_record(text, "judgments", 3, [&](const auto& f, const auto& fail) {
    if (f[2] != "0" && f[2] != "1") fail("relevance must be 0 or 1");
    auto& q = out.by_query[f[0]];
    if (!q.emplace(f[1], f[2] == "1").second) fail("snippet '" + f[1] + "' judged twice");
  });
  return out;
}

RelevanceJudgments load_judgments(const std::filesystem::path& path) {
  return parse_judgments(read_file(path));
}

Run parse_run(std::string_view text) {
  std::map<std::string, std::map<std::size_t, std::string>> by_rank;
  for_each_record(text, "run", 3, [&](const auto& f, const auto& fail) {
    std::size_t rank = 0;
    const auto& r = f[1];
    const auto [ptr, ec] = std::from_chars(r.data(), r.data() + r.size(), rank);
    if (ec != std::errc{} || ptr != r.data() + r.size() || rank == 0) {
      fail("rank must be a positive integer");
    }
    if (!by_rank[f[0]].emplace(rank, f[2]).second) fail("rank " + r + " repeated");
  });
  Run run;
  for (auto& [query, ranks] : by_rank) {
    auto& ids = run.ranked[query];
    for (auto& [rank, id] : ranks) ids.push_back(std::move(id));
  }
  return run;
}

Run load_run(const std::filesystem::path& path) { return parse_run(read_file(path)); }

std::string format_run(const Run& run) {
  std::string out;
  for (const auto& [query, ids] : run.ranked) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out += query + "\t" + std::to_string(i + 1) + "\t" + ids[i] + "\n";
    }
  }
  return out;
}

double average_precision(std::span<const std::string> ranked_ids,
                         const std::map<std::string, bool>& judgments, std::size_t cutoff) {
  if (cutoff == 0) throw PreconditionError("cutoff must be >= 1");
  const auto relevant = static_cast<std::size_t>(
      std::count_if(judgments.begin(), judgments.end(), [](const auto& kv) { return kv.second; }));
  if (relevant == 0) throw UndefinedApError("no relevant snippets judged");
  double sum = 0.0;
  std::size_t hits = 0;
  const std::size_t depth = std::min(cutoff, ranked_ids.size());
  for (std::size_t k = 0; k < depth; ++k) {
    const auto it = judgments.find(ranked_ids[k]);
    if (it == judgments.end() || !it->second) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return sum / static_cast<double>(std::min(relevant, cutoff));
}

double mean_average_precision(std::span<const double> per_query_ap) {
  if (per_query_ap.empty()) throw PreconditionError("MAP of no queries");
  return std::accumulate(per_query_ap.begin(), per_query_ap.end(), 0.0) /
         static_cast<double>(per_query_ap.size());
}

EvalReport compare_runs(const Run& before, const Run& after, const RelevanceJudgments& judgments,
                        std::size_t cutoff) {
  std::vector<std::string> only_before;
  std::vector<std::string> only_after;
  for (const auto& [q, ids] : before.ranked) {
    if (!after.ranked.contains(q)) only_before.push_back(q);
  }
  for (const auto& [q, ids] : after.ranked) {
    if (!before.ranked.contains(q)) only_after.push_back(q);
  }
  if (!only_before.empty() || !only_after.empty()) {
    throw PreconditionError("runs cover different queries; only in before: [" + join(only_before) +
                            "], only in after: [" + join(only_after) + "]");
  }

  static const std::map<std::string, bool> kNone;
  EvalReport report;
  std::vector<double> ap_before;
  std::vector<double> ap_after;
  for (const auto& [q, ids] : before.ranked) {
    const auto it = judgments.by_query.find(q);
    const auto& judged = it == judgments.by_query.end() ? kNone : it->second;
    try {
      QueryComparison row{q, average_precision(ids, judged, cutoff),
                          average_precision(after.ranked.at(q), judged, cutoff)};
      ap_before.push_back(row.ap_before);
      ap_after.push_back(row.ap_after);
      report.rows.push_back(std::move(row));
    } catch (const UndefinedApError&) {
      spdlog::warn("query '{}' has no relevant snippets; left out of MAP", q);
      report.skipped.push_back(q);
    }
  }
  if (report.rows.empty()) throw PreconditionError("no query has a relevant snippet");
  report.map_before = mean_average_precision(ap_before);
  report.map_after = mean_average_precision(ap_after);
  return report;
}

std::string EvalReport::to_table() const {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.query.size());
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::left << std::setw(static_cast<int>(width)) << "query" << std::right
      << std::setw(8) << "P1" << std::setw(8) << "P2" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.query << std::right
        << std::setw(8) << r.ap_before << std::setw(8) << r.ap_after << '\n';
  }
  out << std::left << std::setw(static_cast<int>(width)) << "MAP" << std::right << std::setw(8)
      << map_before << std::setw(8) << map_after << '\n';
  return out.str();
}

nlohmann::json EvalReport::to_json() const {
  auto queries = nlohmann::json::array();
  for (const auto& r : rows) {
    queries.push_back({{"query", r.query}, {"ap_before", r.ap_before}, {"ap_after", r.ap_after}});
  }
  return {{"queries", queries},
          {"map_before", map_before},
          {"map_after", map_after},
          {"skipped", skipped}};
}

}  // namespace cvar
