#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmgec/text.hpp"

namespace lmgec {

/// Sentence -> natural-log probability. Implementations must be
/// deterministic and safe for concurrent calls.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual double score(const Sentence& s) = 0;

  /// Element-wise score(); the default loops. Throws BatchError naming
  /// the first failing element.
  virtual std::vector<double> score_batch(std::span<const Sentence> sentences);

  virtual std::string describe() const = 0;
};

/// Memoizes another scorer by sentence text. Useful when the same
/// candidate sentences are rescored across several thresholds.
class CachingScorer final : public Scorer {
 public:
  explicit CachingScorer(Scorer& inner) : inner_(inner) {}

  double score(const Sentence& s) override;
  std::vector<double> score_batch(std::span<const Sentence> sentences) override;
  std::string describe() const override { return "cache(" + inner_.describe() + ")"; }

  std::size_t hits() const;
  std::size_t misses() const;

 private:
  Scorer& inner_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, double> cache_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Parsed form of `ngram:<path>`, `external:cmd:<argv...>` or
/// `external:tcp:<host>:<port>`.
struct ScorerSpec {
  enum class Kind { NGram, ExternalCommand, ExternalTcp };

  Kind kind = Kind::NGram;
  std::string model_path;
  std::vector<std::string> argv;
  std::string host;
  unsigned short port = 0;
};

/// Throws InputError on anything else.
ScorerSpec parse_scorer_spec(std::string_view spec);

struct ExternalOptions {
  double timeout_seconds = 30.0;
};

std::unique_ptr<Scorer> make_scorer(const ScorerSpec& spec, const ExternalOptions& options = {});

}  // namespace lmgec
