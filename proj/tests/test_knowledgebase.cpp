#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "cvar/error.hpp"
#include "cvar/knowledgebase.hpp"
#include "generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using testing_support::TempDir;

namespace {

std::int64_t total_sum(const cvar::KnowledgeBase& kb) {
  std::int64_t s = 0;
  for (const auto& t : kb.triples) s += t.score_sum;
  return s;
}

std::int64_t total_count(const cvar::KnowledgeBase& kb) {
  std::int64_t s = 0;
  for (const auto& t : kb.triples) s += t.occurrence_count;
  return s;
}

cvar::PropertyLexicon fixture_lexicon() {
  return cvar::PropertyLexicon::load(testing_support::fixture("speed_lexicon.json"));
}

// Greedy merge with a brute-force similarity and no shortcuts.
std::vector<cvar::KnowledgeTriple> merge_oracle(const std::vector<cvar::KnowledgeTriple>& in,
                                                double threshold) {
  std::vector<cvar::KnowledgeTriple> groups;
  for (const auto& t : in) {
    bool merged = false;
    for (auto& g : groups) {
      if (g.property == t.property &&
          oracle::similarity(g.fingerprint.terms, t.fingerprint.terms) >= threshold) {
        g.score_sum += t.score_sum;
        g.occurrence_count += t.occurrence_count;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back(t);
  }
  return groups;
}

cvar::KnowledgeTriple triple(std::set<std::string> terms, std::string property, std::int64_t sum,
                             std::int64_t count, std::string rep) {
  return {{std::move(terms), rep}, std::move(property), sum, count, rep};
}

}  // namespace

TEST_SUITE("knowledgebase") {
  TEST_CASE("one triple per snippet and property") {
    const auto corpus = testing_support::fixture_corpus();
    const auto posts = corpus.posts();
    const auto kb = cvar::build_knowledgebase(posts, fixture_lexicon());
    CHECK(kb.triples.size() == 13);
    CHECK_FALSE(kb.compressed);
    CHECK(kb.properties == std::vector<std::string>{"speed of execution"});
    CHECK(kb.lexicon_digest == fixture_lexicon().digest());
    for (const auto& t : kb.triples) {
      CHECK(t.occurrence_count == 1);
      CHECK(t.fingerprint.source_snippet_id == t.representative_snippet_id);
    }
    CHECK(kb.triples[1].representative_snippet_id == "p02#1");
    CHECK(kb.triples[1].score_sum == kb.triples[2].score_sum);
  }

  TEST_CASE("empty corpus is rejected") {
    const std::vector<cvar::Post> none;
    CHECK_THROWS_AS(cvar::build_knowledgebase(none, fixture_lexicon()), cvar::PreconditionError);
  }

  TEST_CASE("compression merges identical structures and keeps the earliest representative") {
    cvar::KnowledgeBase kb;
    kb.properties = {"speed"};
    kb.triples = {triple({"if<=", "if*", "if-"}, "speed", 2, 1, "a#1"),
                  triple({"if==", "if*", "if-"}, "speed", -1, 1, "b#1"),
                  triple({"if==", "if*", "if-"}, "speed", 3, 1, "c#1"),
                  triple({"if==", "if*", "if-"}, "other", 5, 1, "c#1"),
                  triple({}, "speed", 1, 1, "d#1"),
                  triple({}, "speed", 1, 1, "e#1")};
    const auto c = cvar::compress(kb, 1.0);
    CHECK(c.compressed);
    REQUIRE(c.triples.size() == 5);
    CHECK(c.triples[1].representative_snippet_id == "b#1");
    CHECK(c.triples[1].score_sum == 2);
    CHECK(c.triples[1].occurrence_count == 2);
    CHECK(c.triples[1].mean_score() == 1.0);
    CHECK(total_sum(c) == total_sum(kb));
    CHECK(total_count(c) == total_count(kb));

    const auto loose = cvar::compress(kb, 0.6);
    CHECK(loose.triples.size() == 4);
    CHECK(loose.triples[0].occurrence_count == 3);
    CHECK_THROWS_AS(cvar::compress(kb, 0.0), cvar::ConfigError);
  }

  TEST_CASE("compression matches a pairwise merge oracle and conserves totals") {
    std::mt19937 rng(1234);
    const auto lex = gen::lexicon();
    for (int round = 0; round < 100; ++round) {
      auto posts = gen::random_posts(rng);
      if (posts.empty()) continue;
      const auto kb = cvar::build_knowledgebase(posts, lex);
      for (const double threshold : {1.0, 0.8, 0.5}) {
        const auto c = cvar::compress(kb, threshold);
        CHECK(total_sum(c) == total_sum(kb));
        CHECK(total_count(c) == total_count(kb));
        CHECK(c.triples == merge_oracle(kb.triples, threshold));
      }
    }
  }

  TEST_CASE("at threshold 1.0 grouping does not depend on ingestion order") {
    std::mt19937 rng(777);
    const auto lex = gen::lexicon();
    for (int round = 0; round < 50; ++round) {
      auto posts = gen::random_posts(rng);
      const auto reference = cvar::canonical_groups(cvar::compress(cvar::build_knowledgebase(posts, lex), 1.0));
      std::shuffle(posts.begin(), posts.end(), rng);
      const auto shuffled = cvar::canonical_groups(cvar::compress(cvar::build_knowledgebase(posts, lex), 1.0));
      CHECK(shuffled == reference);
    }
  }

  TEST_CASE("lookup returns the mean of the best match per property") {
    cvar::KnowledgeBase kb;
    kb.properties = {"speed", "memory"};
    kb.compressed = true;
    kb.triples = {triple({"if<", "if||", "if>"}, "speed", 8, 2, "t#1"),
                  triple({"if==", "if*", "if-"}, "speed", -3, 3, "r#1"),
                  triple({"if==", "if*", "if-", "if<"}, "speed", 9, 1, "g#1"),
                  triple({"if==", "if*", "if-"}, "memory", 2, 1, "r#1")};
    const auto hit = cvar::lookup(kb, {{"if==", "if*", "if-"}, ""}, 0.8);
    CHECK(hit.at("speed") == -1.0);
    CHECK(hit.at("memory") == 2.0);
    const auto miss = cvar::lookup(kb, {{"for++"}, ""}, 0.8);
    CHECK(miss.empty());
    const auto loose = cvar::lookup(kb, {{"if==", "if*", "if-", "if<"}, ""}, 0.7);
    CHECK(loose.at("speed") == 9.0);

    kb.compressed = false;
    CHECK_THROWS_AS(cvar::lookup(kb, {{"if<"}, ""}, 0.8), cvar::PreconditionError);
  }

  TEST_CASE("lookup prefers the earliest triple on equal similarity") {
    cvar::KnowledgeBase kb;
    kb.properties = {"speed"};
    kb.compressed = true;
    kb.triples = {triple({"a", "b"}, "speed", 1, 1, "x"), triple({"a", "c"}, "speed", 7, 1, "y")};
    CHECK(cvar::lookup(kb, {{"a", "b", "c"}, ""}, 0.5).at("speed") == 1.0);
  }

  TEST_CASE("serialization round-trips") {
    TempDir dir;
    const auto posts = testing_support::fixture_corpus().posts();
    const auto kb = cvar::compress(cvar::build_knowledgebase(posts, fixture_lexicon()), 1.0);
    const auto text = cvar::serialize_knowledgebase(kb);
    CHECK(cvar::parse_knowledgebase(text) == kb);
    cvar::save_knowledgebase(kb, dir / "kb.jsonl");
    CHECK(cvar::read_file(dir / "kb.jsonl") == text);
    CHECK(cvar::load_knowledgebase(dir / "kb.jsonl") == kb);
    CHECK(cvar::serialize_knowledgebase(cvar::load_knowledgebase(dir / "kb.jsonl")) == text);
  }

  TEST_CASE("damaged knowledgebase files") {
    CHECK_THROWS_AS(cvar::parse_knowledgebase(""), cvar::ParseError);
    CHECK_THROWS_AS(cvar::parse_knowledgebase("{\"version\":2}\n"), cvar::ParseError);
    const std::string header =
        R"({"version":1,"lexicon_digest":"x","dedup_threshold":1.0,"compressed":true,"properties":["s"]})";
    CHECK_NOTHROW(cvar::parse_knowledgebase(header + "\n"));
    CHECK_THROWS_AS(cvar::parse_knowledgebase(header + "\n{\"fingerprint\":[]}\n"), cvar::ParseError);
    CHECK_THROWS_AS(
        cvar::parse_knowledgebase(
            header + "\n" +
            R"({"fingerprint":[],"property":"s","score_sum":1,"count":0,"rep_id":"a"})" + "\n"),
        cvar::ParseError);
    CHECK_THROWS_AS(cvar::load_knowledgebase("/nonexistent/kb.jsonl"), cvar::IoError);
  }
}
