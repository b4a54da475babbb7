#include <doctest.h>

#include <random>

#include "cvar/error.hpp"
#include "cvar/eval.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace {

cvar::Run run_from(const std::string& text) { return cvar::parse_run(text); }

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("average precision of a hand-checked ranking") {
    const std::vector<std::string> ranked = {"a", "b", "c"};
    const std::map<std::string, bool> j = {{"a", true}, {"b", false}, {"c", true}};
    CHECK(cvar::average_precision(ranked, j) == doctest::Approx((1.0 + 2.0 / 3.0) / 2.0));
    CHECK(cvar::average_precision(ranked, j, 1) == doctest::Approx(1.0));
    const std::map<std::string, bool> none = {{"a", false}};
    CHECK_THROWS_AS(cvar::average_precision(ranked, none), cvar::UndefinedApError);
    CHECK_THROWS_AS(cvar::average_precision(ranked, j, 0), cvar::PreconditionError);
    CHECK(cvar::average_precision(std::vector<std::string>{}, j) == 0.0);
  }

  TEST_CASE("average precision agrees with a brute-force oracle") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> len(0, 20);
    std::bernoulli_distribution rel(0.3);
    for (int i = 0; i < 500; ++i) {
      std::vector<std::string> ranked;
      std::map<std::string, bool> j;
      for (int k = len(rng); k > 0; --k) {
        ranked.push_back("d" + std::to_string(k));
        if (rel(rng)) j[ranked.back()] = true;
      }
      j["unretrieved"] = true;
      const std::size_t cutoff = 1 + static_cast<std::size_t>(i % 12);
      CHECK(cvar::average_precision(ranked, j, cutoff) ==
            doctest::Approx(oracle::average_precision(ranked, j, cutoff)));
    }
  }

  TEST_CASE("promoting a relevant document never lowers average precision") {
    std::mt19937 rng(9);
    std::bernoulli_distribution rel(0.4);
    for (int i = 0; i < 300; ++i) {
      std::vector<std::string> ranked;
      std::map<std::string, bool> j;
      for (int k = 0; k < 10; ++k) {
        ranked.push_back("d" + std::to_string(k));
        j[ranked.back()] = rel(rng);
      }
      j["d0"] = true;
      for (std::size_t k = 1; k < ranked.size(); ++k) {
        if (!j[ranked[k]] || j[ranked[k - 1]]) continue;
        auto promoted = ranked;
        std::swap(promoted[k], promoted[k - 1]);
        CHECK(cvar::average_precision(promoted, j) >= cvar::average_precision(ranked, j));
      }
    }
  }

  TEST_CASE("MAP of the precision columns") {
    const auto before = cvar::load_run(testing_support::fixture("precision_before.run"));
    const auto after = cvar::load_run(testing_support::fixture("precision_after.run"));
    const auto qrels = cvar::load_judgments(testing_support::fixture("precision_qrels.txt"));
    const auto report = cvar::compare_runs(before, after, qrels);
    CHECK(report.rows.size() == 10);
    CHECK(report.map_before == doctest::Approx(0.17).epsilon(0.005));
    CHECK(report.map_after == doctest::Approx(0.51).epsilon(0.005));
    CHECK(report.skipped.empty());
    const auto table = report.to_table();
    CHECK(table.find("0.17") != std::string::npos);
    CHECK(table.find("0.51") != std::string::npos);
    CHECK(report.to_json()["map_after"].get<double>() == doctest::Approx(0.51));
  }

  TEST_CASE("MAP input checks") {
    CHECK(cvar::mean_average_precision(std::vector<double>{0.5, 1.0}) == 0.75);
    CHECK_THROWS_AS(cvar::mean_average_precision(std::vector<double>{}), cvar::PreconditionError);
  }

  TEST_CASE("queries without relevant snippets are skipped") {
    const auto qrels = cvar::parse_judgments("q1\ta\t1\nq2\tb\t0\n");
    const auto r = run_from("q1\t1\ta\nq2\t1\tb\n");
    const auto report = cvar::compare_runs(r, r, qrels);
    CHECK(report.skipped == std::vector<std::string>{"q2"});
    CHECK(report.map_before == 1.0);
    CHECK_THROWS_AS(cvar::compare_runs(run_from("q2\t1\tb\n"), run_from("q2\t1\tb\n"), qrels),
                    cvar::PreconditionError);
  }

  TEST_CASE("runs over different queries are rejected") {
    const auto qrels = cvar::parse_judgments("q1\ta\t1\nq2\ta\t1\n");
    try {
      cvar::compare_runs(run_from("q1\t1\ta\n"), run_from("q1\t1\ta\nq2\t1\ta\n"), qrels);
      FAIL("expected PreconditionError");
    } catch (const cvar::PreconditionError& e) {
      CHECK(std::string(e.what()).find("q2") != std::string::npos);
    }
  }

  TEST_CASE("run and judgment parsing") {
    const auto r = run_from("# comment\nq\t2\tb\n\nq\t1\ta\n");
    CHECK(r.ranked.at("q") == std::vector<std::string>{"a", "b"});
    CHECK(cvar::parse_run(cvar::format_run(r)).ranked == r.ranked);
    CHECK_THROWS_AS(run_from("q\t1\ta\nq\t1\tb\n"), cvar::ParseError);
    CHECK_THROWS_AS(run_from("q\t0\ta\n"), cvar::ParseError);
    CHECK_THROWS_AS(run_from("q\tx\ta\n"), cvar::ParseError);
    CHECK_THROWS_AS(run_from("q 1 a\n"), cvar::ParseError);
    const auto j = cvar::parse_judgments("q\ta\t1\nq\tb\t0\n");
    CHECK(j.total_relevant("q") == 1);
    CHECK(j.total_relevant("other") == 0);
    CHECK_THROWS_AS(cvar::parse_judgments("q\ta\t2\n"), cvar::ParseError);
    try {
      cvar::parse_judgments("q\ta\t1\nbroken\n");
      FAIL("expected ParseError");
    } catch (const cvar::ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}
