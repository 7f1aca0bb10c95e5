#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lmgec {

struct Token {
  std::string surface;
  std::size_t index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// An immutable sequence of whitespace-free tokens.
class Sentence {
 public:
  Sentence() = default;
  explicit Sentence(std::vector<std::string> words);
  Sentence(std::initializer_list<std::string> words);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  Token token(std::size_t i) const { return Token{words_.at(i), i}; }
  const std::string& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::vector<Token> tokens() const;

  /// Tokens joined by single spaces.
  std::string text() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  std::vector<std::string> words_;
};

/// Replace tokens [start, end) with `replacement`. An empty replacement is a
/// deletion; start == end is an insertion.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string replacement;
  std::string type_label;

  bool is_insertion() const noexcept { return start == end; }
  bool is_deletion() const noexcept { return start < end && replacement.empty(); }

  /// Same span and replacement; the type label is ignored.
  bool same_change(const Edit& other) const noexcept {
    return start == other.start && end == other.end && replacement == other.replacement;
  }

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct GoldAnnotation {
  int annotator_id = 0;
  std::vector<Edit> edits;  // empty == noop

  bool is_noop() const noexcept { return edits.empty(); }
  friend bool operator==(const GoldAnnotation&, const GoldAnnotation&) = default;
};

/// Whitespace split, then leading/trailing ASCII punctuation peeled off
/// into single-character tokens. Tokens made only of punctuation are kept whole.
Sentence tokenize(std::string_view text);

/// Plain whitespace split with no punctuation handling.
std::vector<std::string> split_whitespace(std::string_view text);

std::string detokenize(const Sentence& s);

/// Apply sorted, non-overlapping edits. Insertions sharing an offset are
/// applied in list order. Throws SpanConflictError on bad spans.
Sentence apply_edits(const Sentence& s, std::span<const Edit> edits);

bool is_ascii_alpha(std::string_view word) noexcept;
std::string to_lower_ascii(std::string_view word);

}  // namespace lmgec
