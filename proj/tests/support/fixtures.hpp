#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmgec/lexicon.hpp"
#include "lmgec/scorer.hpp"
#include "lmgec/text.hpp"

namespace lmgec::testing {

std::string data_dir();
std::string fixture_dir();
std::string stub_scorer_path();

/// Function words from the shipped inventories.
FunctionWordSets shipped_function_words();

/// Lexicon over the given corpus tokens (min_count 1), the synthetic AGID
/// file and the shipped inventories.
Lexicon lexicon_for(const std::vector<Sentence>& corpus);

/// Scorer backed by an arbitrary function; counts calls.
class FunctionScorer final : public Scorer {
 public:
  explicit FunctionScorer(std::function<double(const Sentence&)> fn) : fn_(std::move(fn)) {}
  double score(const Sentence& s) override {
    {
      std::lock_guard lock(mutex_);
      ++calls_;
    }
    return fn_(s);
  }
  std::string describe() const override { return "function"; }
  std::size_t calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
  }

 private:
  std::function<double(const Sentence&)> fn_;
  mutable std::mutex mutex_;
  std::size_t calls_ = 0;
};

/// Scores looked up by sentence text; unknown sentences get `fallback`.
FunctionScorer table_scorer(std::unordered_map<std::string, double> table, double fallback);

}  // namespace lmgec::testing
