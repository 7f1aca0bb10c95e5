#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lmgec/text.hpp"

namespace lmgec {

/// One M² block: the source sentence and its annotators, ordered by id.
struct M2Entry {
  Sentence source;
  std::vector<GoldAnnotation> annotators;

  friend bool operator==(const M2Entry&, const M2Entry&) = default;
};

/// Parses M² text. Within an annotator edits are stably sorted by
/// (start, end), so same-offset insertions keep their file order.
/// Throws ParseError with the offending line number.
std::vector<M2Entry> parse_m2(std::istream& in);
std::vector<M2Entry> parse_m2(std::string_view text);
std::vector<M2Entry> read_m2_file(const std::string& path);

/// Inverse of parse_m2 on well-formed entries. Empty replacements are
/// written as -NONE-; annotators with no edits become a noop line.
void write_m2(std::ostream& out, const std::vector<M2Entry>& entries);
std::string write_m2(const std::vector<M2Entry>& entries);

/// Source sentence with one annotator's edits applied.
Sentence gold_corrected(const M2Entry& entry, std::size_t annotator_index = 0);

}  // namespace lmgec
