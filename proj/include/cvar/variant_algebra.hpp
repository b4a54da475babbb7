#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvar/scoring.hpp"
#include "cvar/snippet.hpp"

namespace cvar {

// Every comparison below reads a property missing from a ScoreVector as 0.

using PropertySet = std::set<std::string>;

enum class PairKind { clone, simple_variant, complex_variant };
enum class Side { first, second };
enum class Preference { first, second, tie };

std::string_view to_string(PairKind kind);
std::string_view to_string(Side side);
std::string_view to_string(Preference pref);

struct PairClassification {
  PairKind kind = PairKind::clone;
  /// Present exactly when kind is simple_variant.
  std::optional<Side> stronger;

  friend bool operator==(const PairClassification&, const PairClassification&) = default;
};

/// Equal on every property. Throws ConfigError for an empty property set.
bool is_clone(const ScoreVector& s1, const ScoreVector& s2, const PropertySet& properties);

/// clone, simple_variant (one side >= everywhere and > somewhere) or
/// complex_variant (each side wins somewhere).
PairClassification classify_pair(const ScoreVector& s1, const ScoreVector& s2,
                                 const PropertySet& properties);

/// s1 weakly dominates s2 and differs from it.
bool stronger_than(const ScoreVector& s1, const ScoreVector& s2, const PropertySet& properties);

/// Compares the weighted sums Σ w·score over the weighted properties.
/// Throws ConfigError for negative or all-zero weights.
Preference weighted_preference(const ScoreVector& s1, const ScoreVector& s2,
                               const std::map<std::string, double>& weights);

enum class OrderLaw { irreflexivity, antisymmetry, transitivity };

std::string_view to_string(OrderLaw law);

struct OrderViolation {
  OrderLaw law;
  /// Positions in the checked collection: one for irreflexivity, two for
  /// antisymmetry, three (a > b > c but not a > c) for transitivity.
  std::vector<std::size_t> positions;
};

/// Checks stronger_than over every pair and triple of `vectors`.
/// Throws PreconditionError on an empty collection.
std::vector<OrderViolation> check_strict_partial_order(std::span<const ScoreVector> vectors,
                                                       const PropertySet& properties);

struct ContextDescriptor {
  std::optional<std::string> intent;
  std::set<std::string> dependencies;
  std::optional<std::string> io_signature;
  std::optional<std::string> state;

  bool populated() const;
};

struct ContextualSnippet {
  CodeSnippet snippet;
  ContextDescriptor context;
};

/// Keeps candidates compatible with `query`: when the query lists
/// dependencies the candidate must share one, and each text field set on
/// both sides must share a case-insensitive word. A field the candidate
/// leaves unset does not exclude it.
/// Throws PreconditionError if `query` has no field set.
std::vector<ContextualSnippet> filter_by_context(std::span<const ContextualSnippet> candidates,
                                                 const ContextDescriptor& query);

/// "speed=3,acc=-1". Throws ParseError on malformed or repeated entries.
ScoreVector parse_score_vector(std::string_view text);

/// Comma-separated names, trimmed. Throws ConfigError if none remain.
PropertySet parse_property_list(std::string_view text);

}  // namespace cvar
