#include "lmgec/confusion.hpp"

#include <algorithm>

namespace lmgec {

namespace {

bool starts_upper(std::string_view w) noexcept { return !w.empty() && w[0] >= 'A' && w[0] <= 'Z'; }

std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

// Copies the token's leading capital onto the alternatives, drops anything
// equal to the token, and removes duplicates while keeping order.
std::vector<std::string> finalize(const std::string& token, std::vector<std::string> alts,
                                  bool match_case) {
  std::vector<std::string> out;
  const bool upper = match_case && starts_upper(token);
  for (auto& a : alts) {
    std::string v = upper && a != kUnknownToken ? capitalize(std::move(a)) : std::move(a);
    if (v == token) continue;
    if (std::find(out.begin(), out.end(), v) != out.end()) continue;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::string> function_word_alternatives(const std::vector<std::string>& inventory,
                                                    const std::string& lower) {
  std::vector<std::string> alts;
  for (const auto& w : inventory) {
    if (w != lower) alts.push_back(w);
  }
  alts.emplace_back();
  return alts;
}

}  // namespace

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Prep: return "PREP";
    case ErrorCategory::Det: return "DET";
    case ErrorCategory::Morph: return "MORPH";
    case ErrorCategory::Spell: return "SPELL";
  }
  return "?";
}

std::vector<CandidateSet> generate_candidates(const Sentence& s, const Lexicon& lex,
                                              const ConfusionConfig& config) {
  std::vector<CandidateSet> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string& tok = s[i];
    const std::string lower = to_lower_ascii(tok);
    CandidateSet set{i, i + 1, ErrorCategory::Prep, {}};

    if (config.enable_prepositions && lex.function_words.is_preposition(lower)) {
      set.category = ErrorCategory::Prep;
      set.alternatives = finalize(tok, function_word_alternatives(lex.function_words.prepositions, lower), true);
    } else if (config.enable_determiners && lex.function_words.is_determiner(lower)) {
      set.category = ErrorCategory::Det;
      set.alternatives = finalize(tok, function_word_alternatives(lex.function_words.determiners, lower), true);
    } else if (lex.vocab.contains(tok) || (i == 0 && lex.vocab.contains(lower))) {
      if (!config.enable_morphology) continue;
      // A capitalized sentence start falls back to its lowercase entry.
      const bool use_lower = !lex.vocab.contains(tok) ||
                             (i == 0 && tok != lower && lex.inflections.entries_containing(tok).empty());
      const std::string& key = use_lower ? lower : tok;
      auto forms = forms_of(key, lex.inflections, lex.vocab, config.oov_policy);
      if (forms.empty()) continue;
      set.category = ErrorCategory::Morph;
      set.alternatives = finalize(tok, std::move(forms), use_lower);
    } else if (is_ascii_alpha(tok)) {
      if (!config.enable_spelling) continue;
      set.category = ErrorCategory::Spell;
      const bool initial_cap = i == 0 && starts_upper(tok);
      const std::string query = initial_cap ? lower : tok;
      if (lex.vocab.contains(query)) continue;
      set.alternatives = finalize(tok, spell_suggest(query, lex.vocab, config.spell), initial_cap);
    } else {
      continue;
    }
    if (!set.alternatives.empty()) out.push_back(std::move(set));
  }
  return out;
}

}  // namespace lmgec
