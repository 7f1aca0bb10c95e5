#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmgec/scorer.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

inline constexpr std::string_view kBosToken = "<s>";
inline constexpr std::string_view kEosToken = "</s>";
inline constexpr int kMaxNGramOrder = 5;

enum class Smoothing : std::uint8_t {
  KneserNey = 0,  // interpolated, fixed discount
  Mle = 1,        // relative frequencies; for debugging only
};

struct NGramOptions {
  int order = 3;
  std::uint64_t min_count = 1;
  Smoothing smoothing = Smoothing::KneserNey;
  double discount = 0.75;
};

/// Word-level n-gram model over a closed vocabulary containing [UNK],
/// <s> and </s>. Immutable after construction.
class NGramModel {
 public:
  using WordId = std::uint32_t;
  using Gram = std::array<WordId, kMaxNGramOrder>;

  struct GramHash {
    std::size_t operator()(const Gram& g) const noexcept;
  };
  using CountTable = std::unordered_map<Gram, std::uint64_t, GramHash>;

  static constexpr WordId kUnk = 0;
  static constexpr WordId kBos = 1;
  static constexpr WordId kEos = 2;

  int order() const noexcept { return order_; }
  Smoothing smoothing() const noexcept { return smoothing_; }
  double discount() const noexcept { return discount_; }

  std::size_t vocab_size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  /// kUnk for unknown words.
  WordId id(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }

  /// Ids that can be predicted: every word except <s>.
  std::vector<WordId> predictable_ids() const;

  /// P(word | history) where history holds the most recent words last;
  /// only the last order-1 entries are used.
  double probability(WordId word, std::span<const WordId> history) const;
  double probability(std::string_view word, std::span<const std::string> history) const;

  /// Sum of ln P over the tokens and the closing </s>.
  double score(const Sentence& s) const;
  /// Same, without the </s> transition.
  double score_prefix(const Sentence& s) const;

  /// Level k (1-based) table: raw counts at the top level (and everywhere
  /// under MLE), continuation counts below.
  const CountTable& counts(int level) const { return counts_.at(static_cast<std::size_t>(level - 1)); }

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static NGramModel load(std::istream& in);
  static NGramModel load_file(const std::string& path);

  /// Human-readable listing of every table, sorted.
  void dump_text(std::ostream& out) const;

 private:
  friend NGramModel train_ngram(std::span<const Sentence>, const NGramOptions&);

  struct ContextStats {
    std::uint64_t total = 0;
    std::uint64_t distinct = 0;
  };
  using ContextTable = std::unordered_map<Gram, ContextStats, GramHash>;

  void build_index();
  void build_context_stats();
  double level_probability(int level, WordId word, std::span<const WordId> history) const;
  std::vector<WordId> padded_ids(const Sentence& s) const;
  double sum_log_prob(const Sentence& s, bool include_eos) const;

  int order_ = 3;
  Smoothing smoothing_ = Smoothing::KneserNey;
  double discount_ = 0.75;
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
  std::vector<CountTable> counts_;
  std::vector<ContextTable> contexts_;  // per level, keyed by the history
};

/// Words rarer than min_count become [UNK]; each sentence is padded with
/// order-1 <s> and one </s>. Throws TrainingError on an empty corpus or a
/// bad order.
NGramModel train_ngram(std::span<const Sentence> corpus, const NGramOptions& options = {});

class NGramScorer final : public Scorer {
 public:
  explicit NGramScorer(NGramModel model) : model_(std::move(model)) {}
  double score(const Sentence& s) override { return model_.score(s); }
  std::string describe() const override;
  const NGramModel& model() const noexcept { return model_; }

 private:
  NGramModel model_;
};

}  // namespace lmgec
