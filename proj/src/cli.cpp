#include "cvar/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "cvar/config.hpp"
#include "cvar/corpus.hpp"
#include "cvar/error.hpp"
#include "cvar/eval.hpp"
#include "cvar/fingerprint.hpp"
#include "cvar/index.hpp"
#include "cvar/io.hpp"
#include "cvar/knowledgebase.hpp"
#include "cvar/lexicon.hpp"
#include "cvar/ranker.hpp"
#include "cvar/variant_algebra.hpp"

namespace cvar {
namespace {

constexpr int kUsageExit = 2;

// Routes the default logger to `err` for the duration of one command.
class LogScope {
 public:
  LogScope(std::ostream& err, bool verbose) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    sink->set_pattern("%l: %v");
    auto logger = std::make_shared<spdlog::logger>("cvar", sink);
    logger->set_level(verbose ? spdlog::level::debug : spdlog::level::warn);
    spdlog::set_default_logger(logger);
  }
  ~LogScope() { spdlog::set_default_logger(previous_); }
  LogScope(const LogScope&) = delete;
  LogScope& operator=(const LogScope&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

struct Options {
  std::string config_path;
  bool verbose = false;
  bool json = false;

  std::string input;
  std::string store;
  std::string lexicon;
  std::string kb;
  std::string out_path;
  bool raw = false;
  double threshold = 0.0;

  std::vector<std::string> files;
  std::string language;

  std::string phrase;
  std::vector<std::string> properties;
  std::size_t top_k = 10;
  bool no_hetero = false;
  double het_threshold = 0.0;
  double blend = 0.0;

  std::string props;
  std::string vector1;
  std::string vector2;

  std::string before;
  std::string after;
  std::string qrels;
  std::size_t cutoff = kDefaultCutoff;
};

Config load_config(const Options& o) {
  return Config::resolve(o.config_path.empty() ? std::nullopt
                                               : std::optional<std::filesystem::path>(o.config_path));
}

void print_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

int cmd_ingest(const Options& o, std::ostream& out) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw IoError("cannot open " + o.input);
  const Corpus corpus = ingest(in);
  save_corpus(corpus, o.store);
  InvertedIndex::build(corpus).save(o.store);
  if (o.json) {
    print_json(out, {{"posts", corpus.documents.size()}, {"snippets", corpus.snippet_count()}});
  } else {
    out << "ingested " << corpus.documents.size() << " posts, " << corpus.snippet_count()
        << " snippets into " << o.store << '\n';
  }
  return 0;
}

void report_kb(const KnowledgeBase& kb, const Options& o, std::ostream& out) {
  std::int64_t occurrences = 0;
  for (const auto& t : kb.triples) occurrences += t.occurrence_count;
  if (o.json) {
    print_json(out, {{"triples", kb.triples.size()},
                     {"occurrences", occurrences},
                     {"compressed", kb.compressed},
                     {"dedup_threshold", kb.dedup_threshold}});
  } else {
    out << kb.triples.size() << " triples (" << occurrences << " occurrences) written to "
        << o.out_path << '\n';
  }
}

int cmd_build_kb(const Options& o, std::ostream& out) {
  const Config config = load_config(o);
  const Corpus corpus = load_corpus(o.store);
  const PropertyLexicon lexicon = PropertyLexicon::load(o.lexicon);
  const auto posts = corpus.posts();
  KnowledgeBase kb = build_knowledgebase(posts, lexicon);
  if (!o.raw) kb = compress(kb, config.dedup_threshold);
  save_knowledgebase(kb, o.out_path);
  report_kb(kb, o, out);
  return 0;
}

int cmd_compress(const Options& o, std::ostream& out) {
  const Config config = load_config(o);
  const double threshold = o.threshold > 0.0 ? o.threshold : config.dedup_threshold;
  const KnowledgeBase kb = compress(load_knowledgebase(o.kb), threshold);
  save_knowledgebase(kb, o.out_path);
  report_kb(kb, o, out);
  return 0;
}

int cmd_fingerprint(const Options& o, std::ostream& out) {
  std::optional<Language> lang = Language::unknown;
  if (!o.language.empty()) {
    lang = parse_language(o.language);
    if (!lang) throw ConfigError("unknown language '" + o.language + "'");
  }
  auto docs = nlohmann::json::array();
  for (const auto& path : o.files) {
    std::string code;
    if (path == "-") {
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      code = buf.str();
    } else {
      code = read_file(path);
    }
    const auto fp = compute_fingerprint({path, code, *lang, ""});
    if (o.json) {
      docs.push_back({{"file", path}, {"terms", fp.terms}});
      continue;
    }
    if (o.files.size() > 1) out << path << '\t';
    bool first = true;
    for (const auto& t : fp.terms) {
      out << (first ? "" : " ") << t;
      first = false;
    }
    out << '\n';
  }
  if (o.json) print_json(out, docs);
  return 0;
}

int cmd_search(const Options& o, std::ostream& out) {
  const Config config = load_config(o);
  Query query;
  query.phrase = o.phrase;
  query.desired_properties = o.properties;
  query.top_k = o.top_k;
  query.heterogeneity_enabled = !o.no_hetero;
  query.het_threshold = o.het_threshold > 0.0 ? o.het_threshold : config.het_threshold;
  const SearchIndex index = SearchIndex::load(o.store);
  const KnowledgeBase kb = load_knowledgebase(o.kb);
  const std::optional<double> blend = o.blend > 0.0 ? std::optional<double>(o.blend) : std::nullopt;
  const auto results = search(query, index, kb, config, blend);
  if (o.json) {
    print_json(out, results_to_json(results));
    return 0;
  }
  for (const auto& r : results) {
    out << r.final_rank << '\t' << r.snippet.id << '\t' << r.base_score << '\t';
    if (r.property_score) {
      out << *r.property_score;
    } else {
      out << '-';
    }
    out << '\n';
  }
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const PropertySet props = parse_property_list(o.props);
  const ScoreVector s1 = parse_score_vector(o.vector1);
  const ScoreVector s2 = parse_score_vector(o.vector2);
  const auto c = classify_pair(s1, s2, props);
  if (o.json) {
    print_json(out, {{"kind", to_string(c.kind)},
                     {"stronger", c.stronger ? nlohmann::json(to_string(*c.stronger))
                                             : nlohmann::json(nullptr)}});
    return 0;
  }
  out << to_string(c.kind);
  if (c.stronger) out << " stronger=" << to_string(*c.stronger);
  out << '\n';
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto report =
      compare_runs(load_run(o.before), load_run(o.after), load_judgments(o.qrels), o.cutoff);
  if (o.json) {
    print_json(out, report.to_json());
  } else {
    out << report.to_table();
  }
  return 0;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Code variant search: fingerprints, property knowledgebase, re-ranking"};
  app.name("cvar");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--config", o.config_path, "JSON config file (default: $CVAR_CONFIG)");
  app.add_flag("-v,--verbose", o.verbose, "Debug logging on stderr");

  auto* ingest_cmd = app.add_subcommand("ingest", "Ingest JSONL posts into a corpus store");
  ingest_cmd->add_option("input", o.input, "JSONL posts")->required();
  ingest_cmd->add_option("--store", o.store, "Store directory")->required();
  ingest_cmd->add_flag("--json", o.json);

  auto* build_cmd = app.add_subcommand("build-kb", "Mine the property knowledgebase");
  build_cmd->add_option("--store", o.store, "Store directory")->required();
  build_cmd->add_option("--lexicon", o.lexicon, "Property lexicon JSON")->required();
  build_cmd->add_option("--out", o.out_path, "Knowledgebase file")->required();
  build_cmd->add_flag("--raw", o.raw, "Skip compression");
  build_cmd->add_flag("--json", o.json);

  auto* compress_cmd = app.add_subcommand("compress", "Merge duplicate knowledge triples");
  compress_cmd->add_option("kb", o.kb, "Input knowledgebase")->required();
  compress_cmd->add_option("--out", o.out_path, "Output knowledgebase")->required();
  compress_cmd->add_option("--threshold", o.threshold, "Dedup threshold (default from config)");
  compress_cmd->add_flag("--json", o.json);

  auto* fp_cmd = app.add_subcommand("fingerprint", "Print structural fingerprints");
  fp_cmd->add_option("files", o.files, "Source files ('-' for stdin)")->required();
  fp_cmd->add_option("--lang", o.language, "java, c, cpp or javascript");
  fp_cmd->add_flag("--json", o.json);

  auto* search_cmd = app.add_subcommand("search", "Search and re-rank snippets");
  search_cmd->add_option("phrase", o.phrase, "Query phrase")->required();
  search_cmd->add_option("--kb", o.kb, "Compressed knowledgebase")->required();
  search_cmd->add_option("--index", o.store, "Store directory")->required();
  search_cmd->add_option("--property", o.properties, "Desired property (repeatable)");
  search_cmd->add_option("--top-k", o.top_k, "Results to return")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--no-hetero", o.no_hetero, "Disable the heterogeneity filter");
  search_cmd->add_option("--het-threshold", o.het_threshold, "Heterogeneity threshold");
  search_cmd->add_option("--blend", o.blend, "Blend weight of the base score, in (0, 1]");
  search_cmd->add_flag("--json", o.json);

  auto* classify_cmd = app.add_subcommand("classify", "Classify a pair of score vectors");
  classify_cmd->add_option("--props", o.props, "Comma-separated property names")->required();
  classify_cmd->add_option("vector1", o.vector1, "name=int,...")->required();
  classify_cmd->add_option("vector2", o.vector2, "name=int,...")->required();
  classify_cmd->add_flag("--json", o.json);

  auto* eval_cmd = app.add_subcommand("eval", "Compare two runs by MAP");
  eval_cmd->add_option("--before", o.before, "Run file before re-ranking")->required();
  eval_cmd->add_option("--after", o.after, "Run file after re-ranking")->required();
  eval_cmd->add_option("--qrels", o.qrels, "Judgments file")->required();
  eval_cmd->add_option("--cutoff", o.cutoff, "Rank cutoff")->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--json", o.json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsageExit;
  }

  LogScope logging(err, o.verbose);
  try {
    if (ingest_cmd->parsed()) return cmd_ingest(o, out);
    if (build_cmd->parsed()) return cmd_build_kb(o, out);
    if (compress_cmd->parsed()) return cmd_compress(o, out);
    if (fp_cmd->parsed()) return cmd_fingerprint(o, out);
    if (search_cmd->parsed()) return cmd_search(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (eval_cmd->parsed()) return cmd_eval(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageExit;
}

}  // namespace cvar
