#include "cvar/variant_algebra.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>

#include "cvar/error.hpp"
#include "cvar/stemmer.hpp"

namespace cvar {
namespace {

struct Tally {
  bool first_wins = false;
  bool second_wins = false;
};

void require_properties(const PropertySet& properties) {
  if (properties.empty()) throw ConfigError("no properties to compare on");
}

Tally tally(const ScoreVector& s1, const ScoreVector& s2, const PropertySet& properties) {
  require_properties(properties);
  Tally t;
  for (const auto& p : properties) {
    const auto a = s1.at_or_zero(p);
    const auto b = s2.at_or_zero(p);
    if (a > b) t.first_wins = true;
    if (b > a) t.second_wins = true;
  }
  return t;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool words_overlap(const std::string& a, const std::string& b) {
  const auto wa = word_tokens(a);
  const auto wb = word_tokens(b);
  const std::set<std::string> left(wa.begin(), wa.end());
  return std::any_of(wb.begin(), wb.end(), [&](const auto& w) { return left.contains(w); });
}

bool text_compatible(const std::optional<std::string>& query,
                     const std::optional<std::string>& candidate) {
  if (!query || !candidate) return true;
  return words_overlap(*query, *candidate);
}

// Dense rows of bits: row i has bit j set when vector i > vector j.
class Relation {
 public:
  explicit Relation(std::size_t n) : words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= bit(j); }
  bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] & bit(j)) != 0; }

  /// Every k with j > k but not i > k.
  std::vector<std::size_t> missing_from(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t diff = bits_[j * words_ + w] & ~bits_[i * words_ + w];
      while (diff != 0) {
        const int b = std::countr_zero(diff);
        out.push_back(w * 64 + static_cast<std::size_t>(b));
        diff &= diff - 1;
      }
    }
    return out;
  }

 private:
  static std::uint64_t bit(std::size_t j) { return std::uint64_t{1} << (j % 64); }

  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::clone:
      return "clone";
    case PairKind::simple_variant:
      return "simple_variant";
    case PairKind::complex_variant:
      return "complex_variant";
  }
  return "clone";
}

std::string_view to_string(Side side) { return side == Side::first ? "first" : "second"; }

std::string_view to_string(Preference pref) {
  switch (pref) {
    case Preference::first:
      return "first";
    case Preference::second:
      return "second";
    case Preference::tie:
      return "tie";
  }
  return "tie";
}

std::string_view to_string(OrderLaw law) {
  switch (law) {
    case OrderLaw::irreflexivity:
      return "irreflexivity";
    case OrderLaw::antisymmetry:
      return "antisymmetry";
    case OrderLaw::transitivity:
      return "transitivity";
  }
  return "irreflexivity";
}

bool is_clone(const ScoreVector& s1, const ScoreVector& s2, const PropertySet& properties) {
  const Tally t = tally(s1, s2, properties);
  return !t.first_wins && !t.second_wins;
}

PairClassification classify_pair(const ScoreVector& s1, const ScoreVector& s2,
                                 const PropertySet& properties) {
  const Tally t = tally(s1, s2, properties);
  if (t.first_wins && t.second_wins) return {PairKind::complex_variant, std::nullopt};
  if (t.first_wins) return {PairKind::simple_variant, Side::first};
  if (t.second_wins) return {PairKind::simple_variant, Side::second};
  return {PairKind::clone, std::nullopt};
}

bool stronger_than(const ScoreVector& s1, const ScoreVector& s2, const PropertySet& properties) {
  const Tally t = tally(s1, s2, properties);
  return t.first_wins && !t.second_wins;
}

Preference weighted_preference(const ScoreVector& s1, const ScoreVector& s2,
                               const std::map<std::string, double>& weights) {
  bool any_positive = false;
  for (const auto& [name, w] : weights) {
    if (!(w >= 0.0)) throw ConfigError("weight for '" + name + "' must be nonnegative");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw ConfigError("at least one weight must be positive");
  double a = 0.0;
  double b = 0.0;
  for (const auto& [name, w] : weights) {
    a += w * static_cast<double>(s1.at_or_zero(name));
    b += w * static_cast<double>(s2.at_or_zero(name));
  }
  if (a > b) return Preference::first;
  if (b > a) return Preference::second;
  return Preference::tie;
}

std::vector<OrderViolation> check_strict_partial_order(std::span<const ScoreVector> vectors,
                                                       const PropertySet& properties) {
  if (vectors.empty()) throw PreconditionError("check_strict_partial_order: no vectors");
  require_properties(properties);
  const std::size_t n = vectors.size();
  Relation gt(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (stronger_than(vectors[i], vectors[j], properties)) gt.set(i, j);
    }
  }
  std::vector<OrderViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (gt.test(i, i)) out.push_back({OrderLaw::irreflexivity, {i}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gt.test(i, j) && gt.test(j, i)) out.push_back({OrderLaw::antisymmetry, {i, j}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!gt.test(i, j)) continue;
      for (const std::size_t k : gt.missing_from(i, j)) {
        out.push_back({OrderLaw::transitivity, {i, j, k}});
      }
    }
  }
  return out;
}

bool ContextDescriptor::populated() const {
  return intent.has_value() || !dependencies.empty() || io_signature.has_value() ||
         state.has_value();
}

std::vector<ContextualSnippet> filter_by_context(std::span<const ContextualSnippet> candidates,
                                                 const ContextDescriptor& query) {
  if (!query.populated()) throw PreconditionError("query context has no field set");
  std::vector<ContextualSnippet> out;
  for (const auto& c : candidates) {
    const auto& ctx = c.context;
    if (!query.dependencies.empty() &&
        std::none_of(ctx.dependencies.begin(), ctx.dependencies.end(),
                     [&](const auto& d) { return query.dependencies.contains(d); })) {
      continue;
    }
    if (!text_compatible(query.intent, ctx.intent) ||
        !text_compatible(query.io_signature, ctx.io_signature) ||
        !text_compatible(query.state, ctx.state)) {
      continue;
    }
    out.push_back(c);
  }
  return out;
}

ScoreVector parse_score_vector(std::string_view text) {
  ScoreVector out;
  if (trim(text).empty()) throw ParseError("empty score vector");
  for (const auto part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("score entry '" + std::string(part) + "' is not name=int");
    }
    const auto name = trim(part.substr(0, eq));
    const auto value = trim(part.substr(eq + 1));
    std::int64_t score = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), score);
    if (name.empty() || value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
      throw ParseError("score entry '" + std::string(part) + "' is not name=int");
    }
    if (!out.scores.emplace(std::string(name), score).second) {
      throw ParseError("property '" + std::string(name) + "' repeated in score vector");
    }
  }
  return out;
}

PropertySet parse_property_list(std::string_view text) {
  PropertySet out;
  for (const auto part : split(text, ',')) {
    if (const auto name = trim(part); !name.empty()) out.emplace(name);
  }
  if (out.empty()) throw ConfigError("property list is empty");
  return out;
}

}  // namespace cvar
