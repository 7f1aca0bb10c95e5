#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lmgec/m2.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

/// A contiguous source span rewritten into a contiguous hypothesis span.
struct LatticeArc {
  std::size_t src_start = 0;
  std::size_t src_end = 0;
  std::size_t hyp_start = 0;
  std::size_t hyp_end = 0;
  std::size_t first_atomic = 0;  // atomic edits [first_atomic, last_atomic] covered
  std::size_t last_atomic = 0;
  Edit edit;                     // source offsets + hypothesis tokens

  friend bool operator==(const LatticeArc&, const LatticeArc&) = default;
};

/// Atomic arcs from one minimal Levenshtein alignment plus every merge of
/// consecutive atomic arcs whose matched gaps are all <= max_unchanged_words.
/// Any full path picks a partition of the atomic arcs into merged groups.
struct EditLattice {
  Sentence source;
  Sentence hypothesis;
  std::size_t atomic_count = 0;
  std::vector<LatticeArc> arcs;  // sorted by (first_atomic, last_atomic)

  bool empty() const noexcept { return arcs.empty(); }
  /// Arc covering atomic edits [first, last], or nullptr.
  const LatticeArc* find(std::size_t first, std::size_t last) const;
};

inline constexpr std::size_t kDefaultMaxUnchangedWords = 2;

enum class AlignOp : std::uint8_t { Match, Substitute, Delete, Insert };

/// Minimal-cost token alignment (match 0, others 1). On equal cost the
/// backtrace prefers match, then substitute, delete, insert.
std::vector<AlignOp> align_tokens(const Sentence& source, const Sentence& hypothesis);

EditLattice extract_lattice(const Sentence& source, const Sentence& hypothesis,
                            std::size_t max_unchanged_words = kDefaultMaxUnchangedWords);

struct MatchOptions {
  bool ignore_case = false;
};

bool edit_matches_gold(const Edit& edit, const Edit& gold, const MatchOptions& options = {});

/// Number of distinct gold edits hit by `edits`.
std::size_t count_gold_matches(std::span<const Edit> edits, std::span<const Edit> gold,
                               const MatchOptions& options = {});

/// The decomposition of source -> hypothesis that maximizes matches with
/// `gold`, then minimizes the number of edits, then prefers the one whose
/// first differing edit ends earliest.
std::vector<Edit> maxmatch_select(const EditLattice& lattice, const GoldAnnotation& gold,
                                  const MatchOptions& options = {});

struct EvalCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  EvalCounts& operator+=(const EvalCounts& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend EvalCounts operator+(EvalCounts a, const EvalCounts& b) noexcept { return a += b; }
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

/// tp/(tp+fp), 1.0 when nothing was proposed.
double precision(const EvalCounts& c) noexcept;
/// tp/(tp+fn), 1.0 when there was nothing to find.
double recall(const EvalCounts& c) noexcept;
/// (1+b^2)PR / (b^2 P + R); 0 when P and R are both 0.
double f_beta(double p, double r, double beta = 0.5) noexcept;

struct SentenceEval {
  int annotator_id = 0;
  EvalCounts counts;
  std::vector<Edit> selected;
  std::vector<Edit> gold;
};

struct EvalReport {
  EvalCounts counts;
  double precision = 1.0;
  double recall = 1.0;
  double f = 0.0;
  std::vector<SentenceEval> sentences;
};

struct EvalOptions {
  double beta = 0.5;
  std::size_t max_unchanged_words = kDefaultMaxUnchangedWords;
  MatchOptions match;
};

/// Sentence-by-sentence, picks the annotator that maximizes F over the
/// running totals plus this sentence (ties: first annotator). A sentence
/// with no annotators is scored against an implicit noop annotator 0.
/// Throws InputError on a length mismatch.
EvalReport evaluate_corpus(std::span<const Sentence> sources, std::span<const Sentence> hypotheses,
                           std::span<const std::vector<GoldAnnotation>> golds,
                           const EvalOptions& options = {});

EvalReport evaluate_m2(std::span<const M2Entry> gold, std::span<const Sentence> hypotheses,
                       const EvalOptions& options = {});

/// One JSON object per sentence (annotator, counts, selected and gold edits).
std::string sentence_eval_json(const SentenceEval& e, std::size_t index);

}  // namespace lmgec
