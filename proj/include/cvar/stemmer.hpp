#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cvar {

/// One pass of the Snowball English (Porter2) stemmer over a lowercase ASCII
/// word. Matches the reference Snowball 3.x implementation.
std::string snowball_english(std::string_view word);

/// Lowercases `term`, then applies snowball_english until the output stops
/// changing. A single Porter2 pass is not idempotent ("agree" -> "agre" ->
/// "agr"); iterating to the fixpoint makes stem(stem(t)) == stem(t).
///
/// Throws PreconditionError on an empty term.
std::string stem(std::string_view term);

/// Maximal runs of ASCII letters and digits, lowercased, in source order.
std::vector<std::string> word_tokens(std::string_view text);

}  // namespace cvar
