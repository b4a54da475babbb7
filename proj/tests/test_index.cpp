#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cvar/error.hpp"
#include "cvar/index.hpp"
#include "cvar/kernels.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using testing_support::TempDir;

namespace {

std::vector<std::string> document_texts(const cvar::Corpus& corpus) {
  std::vector<std::string> out;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.snippets) out.push_back(s.code + "\n" + doc.title + "\n" + doc.body_prose);
  }
  return out;
}

// Okapi BM25 straight from the formula, one document at a time.
std::vector<double> bm25_oracle(const std::vector<std::string>& texts,
                                const std::vector<std::string>& query_terms, double k1, double b) {
  std::vector<std::vector<std::string>> docs;
  double total = 0.0;
  for (const auto& t : texts) {
    std::vector<std::string> stems;
    for (const auto& w : oracle::words(t)) stems.push_back(cvar::stem(w));
    total += static_cast<double>(stems.size());
    docs.push_back(std::move(stems));
  }
  const double n = static_cast<double>(docs.size());
  const double avg = total / n;
  std::set<std::string> unique(query_terms.begin(), query_terms.end());
  std::vector<double> scores(docs.size(), 0.0);
  for (const auto& q : unique) {
    double df = 0.0;
    for (const auto& d : docs) df += std::count(d.begin(), d.end(), q) > 0 ? 1.0 : 0.0;
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const double tf = static_cast<double>(std::count(docs[i].begin(), docs[i].end(), q));
      const double dl = static_cast<double>(docs[i].size());
      scores[i] += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * dl / avg));
    }
  }
  return scores;
}

cvar::Corpus single_doc(const std::string& code, const std::string& prose) {
  cvar::CorpusDocument doc;
  doc.post_id = "d";
  doc.body_prose = prose;
  doc.snippets.push_back({"d#1", code, cvar::Language::c, "d"});
  return cvar::Corpus{{doc}};
}

}  // namespace

TEST_SUITE("index") {
  TEST_CASE("document frequencies match a brute-force scan of the fixture") {
    const auto corpus = testing_support::fixture_corpus();
    const auto index = cvar::InvertedIndex::build(corpus);
    const auto expected = oracle::document_frequencies(document_texts(corpus));
    CHECK(index.doc_count() == 13);
    CHECK(index.all_postings().size() == expected.size());
    for (const auto& [term, df] : expected) {
      INFO(term);
      CHECK(index.document_frequency(term) == df);
    }
    CHECK(index.document_frequency("factori") > 0);
    CHECK(index.postings("zzzz") == nullptr);
  }

  TEST_CASE("postings are in document order with positive tf") {
    const auto index = cvar::InvertedIndex::build(testing_support::fixture_corpus());
    for (const auto& [term, list] : index.all_postings()) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        CHECK(list[i].tf > 0);
        if (i > 0) CHECK(list[i - 1].doc < list[i].doc);
      }
    }
  }

  TEST_CASE("empty corpus gives an empty index") {
    const auto index = cvar::InvertedIndex::build(cvar::Corpus{});
    CHECK(index.doc_count() == 0);
    CHECK(index.average_length() == 0.0);
    const std::vector<std::string> q{"anything"};
    CHECK(cvar::kernels::bm25_scores(index, q, {}).empty());
  }

  TEST_CASE("one-document corpus resolves every token to that document") {
    const auto index = cvar::InvertedIndex::build(single_doc("x = fact(n);", "Running factorials"));
    CHECK(index.doc_count() == 1);
    for (const auto& w : {"x", "fact", "n", "run", "factori"}) {
      REQUIRE(index.postings(w) != nullptr);
      CHECK(index.postings(w)->front().doc == 0);
    }
    CHECK(index.doc_length(0) == 5);
  }

  TEST_CASE("idf is positive and falls with document frequency") {
    const auto index = cvar::InvertedIndex::build(testing_support::fixture_corpus());
    CHECK(index.idf("factori") > 0.0);
    CHECK(index.idf("return") > 0.0);
    CHECK(index.idf("factori") > index.idf("return"));
    CHECK(index.idf("never") == doctest::Approx(std::log(1.0 + 13.5 / 0.5)));
  }

  TEST_CASE("BM25 scores match the formula") {
    const auto corpus = testing_support::fixture_corpus();
    const auto index = cvar::InvertedIndex::build(corpus);
    const auto texts = document_texts(corpus);
    for (const auto& phrase : {"factorial", "fast power", "fibonacci fibonacci loop", "zzz"}) {
      const auto terms = cvar::index_terms(phrase);
      const auto got = cvar::kernels::bm25_scores(index, terms, {1.2, 0.75});
      const auto want = bm25_oracle(texts, terms, 1.2, 0.75);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("adding an occurrence of a single query term never lowers that document's score") {
    std::mt19937 rng(99);
    const std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "loop", "fast"};
    std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
    std::uniform_int_distribution<int> len(1, 12);
    for (int round = 0; round < 200; ++round) {
      cvar::Corpus corpus;
      const int docs = 1 + round % 5;
      for (int d = 0; d < docs; ++d) {
        cvar::CorpusDocument doc;
        doc.post_id = "d" + std::to_string(d);
        for (int k = len(rng); k > 0; --k) doc.body_prose += vocab[word(rng)] + " ";
        doc.snippets.push_back({doc.post_id + "#1", "x", cvar::Language::c, doc.post_id});
        corpus.documents.push_back(doc);
      }
      const std::string term = vocab[word(rng)];
      const std::vector<std::string> q{term};
      const auto before = cvar::kernels::bm25_scores(cvar::InvertedIndex::build(corpus), q, {});
      corpus.documents[0].body_prose += " " + term;
      const auto after = cvar::kernels::bm25_scores(cvar::InvertedIndex::build(corpus), q, {});
      CHECK(after[0] >= before[0]);
    }
  }

  TEST_CASE("JSON and store round-trip") {
    TempDir dir;
    const auto index = cvar::InvertedIndex::build(testing_support::fixture_corpus());
    CHECK(cvar::InvertedIndex::from_json(index.to_json()) == index);
    index.save(dir.path());
    const auto bytes = cvar::read_file(dir / std::string(cvar::kIndexFile));
    const auto loaded = cvar::InvertedIndex::load(dir.path());
    CHECK(loaded == index);
    loaded.save(dir.path());
    CHECK(cvar::read_file(dir / std::string(cvar::kIndexFile)) == bytes);
    CHECK_THROWS_AS(cvar::InvertedIndex::load(dir / "missing"), cvar::IoError);
  }

  TEST_CASE("parameter validation") {
    CHECK_NOTHROW(cvar::Bm25Params{}.validate());
    CHECK_THROWS_AS((cvar::Bm25Params{0.0, 0.75}.validate()), cvar::ConfigError);
    CHECK_THROWS_AS((cvar::Bm25Params{1.2, 1.5}.validate()), cvar::ConfigError);
    CHECK_NOTHROW((cvar::Bm25Params{1.2, 0.0}.validate()));
  }
}
