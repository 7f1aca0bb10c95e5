#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lmgec/lexicon.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

enum class ErrorCategory { Prep, Det, Morph, Spell };

std::string_view to_string(ErrorCategory category) noexcept;

/// Alternatives for a single token. "" is the deletion alternative and is
/// only produced for prepositions and determiners.
struct CandidateSet {
  std::size_t start = 0;
  std::size_t end = 0;
  ErrorCategory category = ErrorCategory::Prep;
  std::vector<std::string> alternatives;

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

struct ConfusionConfig {
  OovPolicy oov_policy = OovPolicy::Unk;
  SpellOptions spell;
  bool enable_prepositions = true;
  bool enable_determiners = true;
  bool enable_morphology = true;
  bool enable_spelling = true;
};

/// At most one set per token, first match wins: preposition, determiner,
/// inflection, spelling. Function-word membership is tested on the
/// lowercased token and alternatives copy a leading capital.
std::vector<CandidateSet> generate_candidates(const Sentence& s, const Lexicon& lex,
                                              const ConfusionConfig& config = {});

}  // namespace lmgec
