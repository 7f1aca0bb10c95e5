#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmgec/confusion.hpp"
#include "lmgec/scorer.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

/// Threshold value that disables correction entirely.
inline constexpr double kTauOff = std::numeric_limits<double>::infinity();

struct AppliedEdit {
  Edit edit;                       // in original-sentence coordinates
  std::size_t working_start = 0;   // position in the working sentence when applied
  double score_before = 0.0;
  double score_after = 0.0;
};

struct CorrectionResult {
  Sentence original;
  Sentence corrected;
  double original_score = 0.0;
  std::vector<AppliedEdit> applied;  // in application order

  /// applied edits sorted by original offset; apply_edits(original, ...) == corrected.
  std::vector<Edit> projected_edits() const;
};

struct SearchOptions {
  double tau = 0.0;
  int max_passes = 1;
  bool batch_scoring = true;
};

/// Greedy left-to-right sweep over candidate positions. At each position
/// the best-scoring alternative replaces the working sentence only if it
/// beats the working sentence's score by more than tau. Throws whatever
/// the scorer throws; no partial result is returned.
CorrectionResult correct_sentence(const Sentence& s, std::span<const CandidateSet> candidates,
                                  Scorer& scorer, const SearchOptions& options = {});

/// Replays result.applied on result.original, returning the working
/// sentence before each edit followed by the final one.
std::vector<Sentence> replay_working_sentences(const CorrectionResult& result);

struct CorpusOptions {
  SearchOptions search;
  ConfusionConfig confusion;
  int jobs = 1;
};

struct CorpusEntry {
  CorrectionResult result;          // corrected == original when error is set
  std::optional<std::string> error;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;  // input order
  std::size_t failed = 0;
  std::size_t edits = 0;
};

/// Generates candidates and corrects every sentence. Per-sentence scorer
/// errors are recorded and the sentence passes through unchanged;
/// ScorerUnavailable aborts the run.
CorpusReport correct_corpus(std::span<const Sentence> sentences, const Lexicon& lex, Scorer& scorer,
                            const CorpusOptions& options = {});

/// Same, with candidates already generated (one list per sentence).
CorpusReport correct_corpus(std::span<const Sentence> sentences,
                            std::span<const std::vector<CandidateSet>> candidates, Scorer& scorer,
                            const CorpusOptions& options = {});

}  // namespace lmgec
