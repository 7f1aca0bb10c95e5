#include "lmgec/text.hpp"

#include <algorithm>
#include <cctype>

#include "lmgec/error.hpp"

namespace lmgec {

namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_punct(char c) noexcept {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

Sentence::Sentence(std::vector<std::string> words) : words_(std::move(words)) {
  for (const auto& w : words_) {
    if (w.empty() || std::any_of(w.begin(), w.end(), is_space)) {
      throw InputError("token must be non-empty and free of whitespace: '" + w + "'");
    }
  }
}

Sentence::Sentence(std::initializer_list<std::string> words)
    : Sentence(std::vector<std::string>(words)) {}

std::vector<Token> Sentence::tokens() const {
  std::vector<Token> out;
  out.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) out.push_back({words_[i], i});
  return out;
}

std::string Sentence::text() const {
  std::string out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i) out += ' ';
    out += words_[i];
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

Sentence tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& chunk : split_whitespace(text)) {
    if (std::all_of(chunk.begin(), chunk.end(), is_punct)) {
      out.push_back(chunk);
      continue;
    }
    std::size_t lo = 0;
    std::size_t hi = chunk.size();
    while (lo < hi && is_punct(chunk[lo])) out.emplace_back(1, chunk[lo++]);
    std::vector<std::string> tail;
    while (hi > lo && is_punct(chunk[hi - 1])) tail.emplace_back(1, chunk[--hi]);
    out.push_back(chunk.substr(lo, hi - lo));
    out.insert(out.end(), tail.rbegin(), tail.rend());
  }
  return Sentence(std::move(out));
}

std::string detokenize(const Sentence& s) { return s.text(); }

Sentence apply_edits(const Sentence& s, std::span<const Edit> edits) {
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < edits.size(); ++k) {
    const Edit& e = edits[k];
    if (e.start > e.end || e.end > s.size()) {
      throw SpanConflictError("edit " + std::to_string(k) + " span [" + std::to_string(e.start) +
                              ", " + std::to_string(e.end) + ") outside sentence of length " +
                              std::to_string(s.size()));
    }
    if (k > 0 && e.start < prev_end) {
      throw SpanConflictError("edit " + std::to_string(k) + " overlaps or precedes edit " +
                              std::to_string(k - 1));
    }
    prev_end = e.end;
  }

  const auto& words = s.words();
  std::vector<std::string> out;
  out.reserve(words.size() + edits.size());
  std::size_t cursor = 0;
  for (const Edit& e : edits) {
    out.insert(out.end(), words.begin() + static_cast<std::ptrdiff_t>(cursor),
               words.begin() + static_cast<std::ptrdiff_t>(e.start));
    for (auto& w : split_whitespace(e.replacement)) out.push_back(std::move(w));
    cursor = e.end;
  }
  out.insert(out.end(), words.begin() + static_cast<std::ptrdiff_t>(cursor), words.end());
  return Sentence(std::move(out));
}

bool is_ascii_alpha(std::string_view word) noexcept {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

std::string to_lower_ascii(std::string_view word) {
  std::string out(word);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace lmgec
