#include <doctest.h>

#include <random>

#include "cvar/error.hpp"
#include "cvar/variant_algebra.hpp"

using cvar::PairKind;
using cvar::ScoreVector;
using cvar::Side;

namespace {

const cvar::PropertySet kTwo{"a", "b"};

ScoreVector sv(std::int64_t a, std::int64_t b) { return {{{"a", a}, {"b", b}}}; }

cvar::ContextualSnippet candidate(std::string id, cvar::ContextDescriptor ctx) {
  cvar::ContextualSnippet c;
  c.snippet.id = std::move(id);
  c.context = std::move(ctx);
  return c;
}

// Component-by-component comparison, independent of the library.
PairKind kind_oracle(const ScoreVector& x, const ScoreVector& y, const cvar::PropertySet& props) {
  bool x_wins = false;
  bool y_wins = false;
  for (const auto& p : props) {
    const auto a = x.at_or_zero(p);
    const auto b = y.at_or_zero(p);
    x_wins |= a > b;
    y_wins |= b > a;
  }
  if (x_wins && y_wins) return PairKind::complex_variant;
  if (x_wins || y_wins) return PairKind::simple_variant;
  return PairKind::clone;
}

}  // namespace

TEST_SUITE("variant_algebra") {
  TEST_CASE("clones") {
    CHECK(cvar::is_clone(sv(3, 2), sv(3, 2), kTwo));
    CHECK_FALSE(cvar::is_clone(sv(3, 2), sv(3, 1), kTwo));
    CHECK(cvar::is_clone(sv(3, 2), sv(3, 1), {"a"}));
    CHECK_THROWS_AS(cvar::is_clone(sv(1, 1), sv(1, 1), {}), cvar::ConfigError);
  }

  TEST_CASE("missing properties read as zero") {
    const ScoreVector only_a{{{"a", 2}}};
    CHECK(cvar::is_clone(only_a, sv(2, 0), kTwo));
    CHECK(cvar::stronger_than(only_a, sv(2, -1), kTwo));
  }

  TEST_CASE("pair classification") {
    CHECK(cvar::classify_pair(sv(3, 2), sv(1, 2), kTwo) ==
          cvar::PairClassification{PairKind::simple_variant, Side::first});
    CHECK(cvar::classify_pair(sv(1, 2), sv(3, 2), kTwo) ==
          cvar::PairClassification{PairKind::simple_variant, Side::second});
    CHECK(cvar::classify_pair(sv(3, 1), sv(1, 2), kTwo) ==
          cvar::PairClassification{PairKind::complex_variant, std::nullopt});
    CHECK(cvar::classify_pair(sv(5, 5), sv(5, 5), kTwo) ==
          cvar::PairClassification{PairKind::clone, std::nullopt});
    CHECK(cvar::to_string(PairKind::complex_variant) == "complex_variant");
  }

  TEST_CASE("fixture recursive snippets are clones under speed") {
    const cvar::PropertySet speed{"speed of execution"};
    const ScoreVector s{{{"speed of execution", -2}}};
    CHECK(cvar::is_clone(s, s, speed));
    CHECK(cvar::classify_pair(s, s, speed).kind == PairKind::clone);
  }

  TEST_CASE("dominance") {
    CHECK(cvar::stronger_than(sv(3, 2), sv(1, 2), kTwo));
    CHECK_FALSE(cvar::stronger_than(sv(3, 2), sv(3, 2), kTwo));
    CHECK_FALSE(cvar::stronger_than(sv(3, 1), sv(1, 2), kTwo));
    CHECK_FALSE(cvar::stronger_than(sv(1, 2), sv(3, 1), kTwo));
  }

  TEST_CASE("weighted preference") {
    CHECK(cvar::weighted_preference(sv(3, 1), sv(1, 2), {{"a", 1.0}, {"b", 1.0}}) ==
          cvar::Preference::first);
    CHECK(cvar::weighted_preference(sv(3, 1), sv(1, 2), {{"a", 0.2}, {"b", 1.0}}) ==
          cvar::Preference::second);
    CHECK(cvar::weighted_preference(sv(4, 4), sv(4, 4), {{"a", 0.3}, {"b", 7.0}}) ==
          cvar::Preference::tie);
    CHECK_THROWS_AS(cvar::weighted_preference(sv(1, 1), sv(1, 1), {{"a", 0.0}, {"b", 0.0}}),
                    cvar::ConfigError);
    CHECK_THROWS_AS(cvar::weighted_preference(sv(1, 1), sv(1, 1), {{"a", -1.0}}),
                    cvar::ConfigError);
  }

  TEST_CASE("scaling the weights keeps the preference") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> score(-5, 5);
    std::uniform_int_distribution<int> weight(0, 8);
    for (int i = 0; i < 500; ++i) {
      const auto x = sv(score(rng), score(rng));
      const auto y = sv(score(rng), score(rng));
      std::map<std::string, double> w{{"a", weight(rng) / 4.0}, {"b", 1.0 + weight(rng)}};
      const auto base = cvar::weighted_preference(x, y, w);
      for (const double c : {0.5, 2.0, 8.0}) {
        auto scaled = w;
        for (auto& [_, v] : scaled) v *= c;
        CHECK(cvar::weighted_preference(x, y, scaled) == base);
      }
    }
  }

  TEST_CASE("order laws on small sets") {
    const std::vector<ScoreVector> one{sv(1, 1)};
    CHECK(cvar::check_strict_partial_order(one, kTwo).empty());
    const std::vector<ScoreVector> chain{sv(1, 1), sv(2, 1), sv(2, 2)};
    CHECK(cvar::check_strict_partial_order(chain, kTwo).empty());
    CHECK(cvar::stronger_than(chain[2], chain[0], kTwo));
    const std::vector<ScoreVector> none;
    CHECK_THROWS_AS(cvar::check_strict_partial_order(none, kTwo), cvar::PreconditionError);
  }

  TEST_CASE("classification agrees with a component oracle and is symmetric") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> score(-5, 5);
    const cvar::PropertySet props{"a", "b", "c"};
    for (int i = 0; i < 2000; ++i) {
      ScoreVector x;
      ScoreVector y;
      for (const auto& p : props) {
        if (score(rng) != 0) x.scores[p] = score(rng);
        if (score(rng) != 0) y.scores[p] = score(rng);
      }
      const auto xy = cvar::classify_pair(x, y, props);
      const auto yx = cvar::classify_pair(y, x, props);
      CHECK(xy.kind == kind_oracle(x, y, props));
      CHECK(yx.kind == xy.kind);
      CHECK(xy.stronger.has_value() == (xy.kind == PairKind::simple_variant));
      if (xy.stronger) CHECK(*yx.stronger != *xy.stronger);
      const bool one_way = cvar::stronger_than(x, y, props) != cvar::stronger_than(y, x, props);
      CHECK(one_way == (xy.kind == PairKind::simple_variant));
    }
  }

  TEST_CASE("context filtering") {
    cvar::ContextDescriptor query;
    query.dependencies = {"rest-api"};
    const std::vector<cvar::ContextualSnippet> candidates = {
        candidate("keep", {std::nullopt, {"rest-api", "json"}, std::nullopt, std::nullopt}),
        candidate("drop", {std::nullopt, {"gpl-lib"}, std::nullopt, std::nullopt}),
        candidate("bare", {})};
    const auto kept = cvar::filter_by_context(candidates, query);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].snippet.id == "keep");

    cvar::ContextDescriptor intent;
    intent.intent = "Parse JSON payload";
    const std::vector<cvar::ContextualSnippet> by_intent = {
        candidate("a", {std::string("parse xml"), {}, std::nullopt, std::nullopt}),
        candidate("b", {std::string("render html"), {}, std::nullopt, std::nullopt}),
        candidate("c", {})};
    const auto matched = cvar::filter_by_context(by_intent, intent);
    REQUIRE(matched.size() == 2);
    CHECK(matched[0].snippet.id == "a");
    CHECK(matched[1].snippet.id == "c");

    CHECK_THROWS_AS(cvar::filter_by_context(candidates, cvar::ContextDescriptor{}),
                    cvar::PreconditionError);
  }

  TEST_CASE("parsing score vectors and property lists") {
    CHECK(cvar::parse_score_vector("speed=3, acc=-1") == ScoreVector{{{"speed", 3}, {"acc", -1}}});
    CHECK_THROWS_AS(cvar::parse_score_vector("speed"), cvar::ParseError);
    CHECK_THROWS_AS(cvar::parse_score_vector("speed=x"), cvar::ParseError);
    CHECK_THROWS_AS(cvar::parse_score_vector("speed=1,speed=2"), cvar::ParseError);
    CHECK(cvar::parse_property_list(" speed , acc") == cvar::PropertySet{"speed", "acc"});
    CHECK_THROWS_AS(cvar::parse_property_list(" , "), cvar::ConfigError);
  }
}
