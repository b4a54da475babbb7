#include "cvar/stemmer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <utility>

#include "cvar/error.hpp"

namespace cvar {
namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

// Vowels plus w, x, Y: letters that cannot close a short syllable.
bool is_vowel_wxy(char c) { return is_vowel(c) || c == 'w' || c == 'x' || c == 'Y'; }

bool is_valid_li(char c) {
  return c == 'c' || c == 'd' || c == 'e' || c == 'g' || c == 'h' || c == 'k' || c == 'm' ||
         c == 'n' || c == 'r' || c == 't';
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A suffix rule: on match, the suffix is replaced by `replacement`; `action`
// selects rules that need extra checks.
struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  int action = 0;
};

// Longest rule whose suffix ends the word, or nullptr.
template <std::size_t N>
const Rule* longest_match(const std::string& word, const std::array<Rule, N>& rules) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (ends_with(word, r.suffix) && (best == nullptr || r.suffix.size() > best->suffix.size())) {
      best = &r;
    }
  }
  return best;
}

class Porter2 {
 public:
  explicit Porter2(std::string word) : w_(std::move(word)) {}

  std::string run() {
    if (auto special = exception_form()) return std::string(*special);
    if (w_.size() < 3) return w_;
    prelude();
    mark_regions();
    step_1a();
    step_1b();
    step_1c();
    step_2();
    step_3();
    step_4();
    step_5();
    if (y_found_) std::replace(w_.begin(), w_.end(), 'Y', 'y');
    return w_;
  }

 private:
  std::optional<std::string_view> exception_form() const {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 15> kForms = {{
        {"andes", "andes"},   {"atlas", "atlas"}, {"bias", "bias"},     {"cosmos", "cosmos"},
        {"early", "earli"},   {"gently", "gentl"}, {"howe", "howe"},    {"idly", "idl"},
        {"news", "news"},     {"only", "onli"},   {"singly", "singl"},  {"skies", "sky"},
        {"skis", "ski"},      {"sky", "sky"},     {"ugly", "ugli"},
    }};
    for (const auto& [from, to] : kForms) {
      if (w_ == from) return to;
    }
    return std::nullopt;
  }

  void prelude() {
    if (!w_.empty() && w_[0] == '\'') w_.erase(0, 1);
    if (!w_.empty() && w_[0] == 'y') {
      w_[0] = 'Y';
      y_found_ = true;
    }
    for (std::size_t i = 1; i < w_.size(); ++i) {
      if (w_[i] == 'y' && is_vowel(w_[i - 1])) {
        w_[i] = 'Y';
        y_found_ = true;
      }
    }
  }

  // Position after the first non-vowel that follows a vowel, from `from`.
  std::size_t region_start(std::size_t from) const {
    std::size_t i = from;
    while (i < w_.size() && !is_vowel(w_[i])) ++i;
    if (i >= w_.size()) return w_.size();
    while (i < w_.size() && is_vowel(w_[i])) ++i;
    if (i >= w_.size()) return w_.size();
    return i + 1;
  }

  void mark_regions() {
    static constexpr std::array<std::string_view, 9> kPrefixes = {
        "arsen", "commun", "emerg", "gener", "inter", "later", "organ", "past", "univers"};
    p1_ = std::string::npos;
    for (const auto prefix : kPrefixes) {
      if (w_.starts_with(prefix)) {
        p1_ = prefix.size();
        break;
      }
    }
    if (p1_ == std::string::npos) p1_ = region_start(0);
    p2_ = p1_ >= w_.size() ? w_.size() : region_start(p1_);
  }

  bool in_r1(std::size_t pos) const { return pos >= p1_; }
  bool in_r2(std::size_t pos) const { return pos >= p2_; }

  // Short syllable ending at `end` (exclusive), or the word ends in "past".
  bool short_syllable(std::size_t end) const {
    if (end >= 3 && !is_vowel_wxy(w_[end - 1]) && is_vowel(w_[end - 2]) && !is_vowel(w_[end - 3]))
      return true;
    if (end == 2 && !is_vowel(w_[1]) && is_vowel(w_[0])) return true;
    return end >= 4 && w_.compare(end - 4, 4, "past") == 0;
  }

  bool has_vowel_before(std::size_t end) const {
    return std::any_of(w_.begin(), w_.begin() + static_cast<std::ptrdiff_t>(end), is_vowel);
  }

  void replace_suffix(std::size_t suffix_len, std::string_view replacement) {
    w_.replace(w_.size() - suffix_len, suffix_len, replacement);
  }

  void step_1a() {
    if (ends_with(w_, "'s'")) {
      w_.resize(w_.size() - 3);
    } else if (ends_with(w_, "'s")) {
      w_.resize(w_.size() - 2);
    } else if (ends_with(w_, "'")) {
      w_.resize(w_.size() - 1);
    }
    if (ends_with(w_, "sses")) {
      replace_suffix(4, "ss");
    } else if (ends_with(w_, "ied") || ends_with(w_, "ies")) {
      replace_suffix(3, w_.size() > 4 ? "i" : "ie");
    } else if (ends_with(w_, "ss") || ends_with(w_, "us")) {
      // unchanged
    } else if (ends_with(w_, "s")) {
      // delete if a vowel occurs before the letter preceding the s
      if (w_.size() >= 3 && has_vowel_before(w_.size() - 2)) w_.pop_back();
    }
  }

  void step_1b() {
    static constexpr std::array<Rule, 6> kSuffixes = {{
        {"eed", "", 1}, {"eedly", "", 1}, {"ed", "", 2},
        {"edly", "", 2}, {"ingly", "", 2}, {"ing", "", 3},
    }};
    const Rule* rule = longest_match(w_, kSuffixes);
    if (rule == nullptr) return;
    const std::size_t start = w_.size() - rule->suffix.size();
    const std::string stem_part = w_.substr(0, start);

    if (rule->action == 1) {
      if (!in_r1(start)) return;
      if (stem_part == "succ" || stem_part == "proc" || stem_part == "exc") return;
      replace_suffix(rule->suffix.size(), "ee");
      return;
    }
    if (rule->action == 3) {
      // dying -> die, but not when the y follows a vowel
      if (stem_part.size() == 2 && stem_part[1] == 'y' && !is_vowel(stem_part[0])) {
        w_ = stem_part.substr(0, 1) + "ie";
        return;
      }
      if (stem_part == "even" || stem_part == "cann" || stem_part == "inn" ||
          stem_part == "earr" || stem_part == "herr" || stem_part == "out") {
        return;
      }
    }
    if (!has_vowel_before(start)) return;
    w_.resize(start);

    if (ends_with(w_, "at") || ends_with(w_, "bl") || ends_with(w_, "iz")) {
      w_ += 'e';
      return;
    }
    static constexpr std::array<std::string_view, 9> kDoubles = {"bb", "dd", "ff", "gg", "mm",
                                                                  "nn", "pp", "rr", "tt"};
    for (const auto d : kDoubles) {
      if (ends_with(w_, d)) {
        if (w_.size() == 3 && (w_[0] == 'a' || w_[0] == 'e' || w_[0] == 'o')) return;
        w_.pop_back();
        return;
      }
    }
    if (w_.size() == p1_ && short_syllable(w_.size())) w_ += 'e';
  }

  void step_1c() {
    if (w_.size() < 3) return;
    const char last = w_.back();
    if ((last == 'y' || last == 'Y') && !is_vowel(w_[w_.size() - 2])) w_.back() = 'i';
  }

  void step_2() {
    static constexpr std::array<Rule, 25> kRules = {{
        {"anci", "ance", 0},    {"enci", "ence", 0},     {"ogi", "og", 14},
        {"li", "", 16},         {"bli", "ble", 0},       {"abli", "able", 0},
        {"alli", "al", 0},      {"fulli", "ful", 0},     {"lessli", "less", 0},
        {"ousli", "ous", 0},    {"entli", "ent", 0},     {"aliti", "al", 0},
        {"biliti", "ble", 0},   {"iviti", "ive", 0},     {"tional", "tion", 0},
        {"ational", "ate", 0},  {"alism", "al", 0},      {"ation", "ate", 0},
        {"ization", "ize", 0},  {"izer", "ize", 0},      {"ator", "ate", 0},
        {"iveness", "ive", 0},  {"fulness", "ful", 0},   {"ousness", "ous", 0},
        {"ogist", "og", 0},
    }};
    const Rule* rule = longest_match(w_, kRules);
    if (rule == nullptr) return;
    const std::size_t start = w_.size() - rule->suffix.size();
    if (!in_r1(start)) return;
    if (rule->action == 14 && (start == 0 || w_[start - 1] != 'l')) return;
    if (rule->action == 16 && (start == 0 || !is_valid_li(w_[start - 1]))) return;
    replace_suffix(rule->suffix.size(), rule->replacement);
  }

  void step_3() {
    static constexpr std::array<Rule, 9> kRules = {{
        {"icate", "ic", 0}, {"ative", "", 6},       {"alize", "al", 0},
        {"iciti", "ic", 0}, {"ical", "ic", 0},      {"tional", "tion", 0},
        {"ational", "ate", 0}, {"ful", "", 0},      {"ness", "", 0},
    }};
    const Rule* rule = longest_match(w_, kRules);
    if (rule == nullptr) return;
    const std::size_t start = w_.size() - rule->suffix.size();
    if (!in_r1(start)) return;
    if (rule->action == 6 && !in_r2(start)) return;
    replace_suffix(rule->suffix.size(), rule->replacement);
  }

  void step_4() {
    static constexpr std::array<Rule, 18> kRules = {{
        {"ic", "", 0},   {"ance", "", 0}, {"ence", "", 0}, {"able", "", 0}, {"ible", "", 0},
        {"ate", "", 0},  {"ive", "", 0},  {"ize", "", 0},  {"iti", "", 0},  {"al", "", 0},
        {"ism", "", 0},  {"ion", "", 2},  {"er", "", 0},   {"ous", "", 0},  {"ant", "", 0},
        {"ent", "", 0},  {"ment", "", 0}, {"ement", "", 0},
    }};
    const Rule* rule = longest_match(w_, kRules);
    if (rule == nullptr) return;
    const std::size_t start = w_.size() - rule->suffix.size();
    if (!in_r2(start)) return;
    if (rule->action == 2 && (start == 0 || (w_[start - 1] != 's' && w_[start - 1] != 't')))
      return;
    w_.resize(start);
  }

  void step_5() {
    if (w_.empty()) return;
    const std::size_t last = w_.size() - 1;
    if (w_.back() == 'e') {
      if (in_r2(last) || (in_r1(last) && !short_syllable(last))) w_.pop_back();
    } else if (w_.back() == 'l') {
      if (in_r2(last) && last > 0 && w_[last - 1] == 'l') w_.pop_back();
    }
  }

  std::string w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
  bool y_found_ = false;
};

}  // namespace

std::string snowball_english(std::string_view word) { return Porter2(std::string(word)).run(); }

std::string stem(std::string_view term) {
  if (term.empty()) throw PreconditionError("stem: empty term");
  std::string current(term);
  std::transform(current.begin(), current.end(), current.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (;;) {
    std::string next = snowball_english(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isalnum(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace cvar
