#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lmgec {

inline constexpr std::string_view kUnknownToken = "[UNK]";

class Vocabulary {
 public:
  Vocabulary() = default;
  /// Counts below 1 are rejected with InputError.
  explicit Vocabulary(std::unordered_map<std::string, std::uint64_t> counts,
                      bool case_sensitive = true);

  bool contains(std::string_view word) const;
  /// 0 when absent.
  std::uint64_t count(std::string_view word) const;
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }
  bool case_sensitive() const noexcept { return case_sensitive_; }

  /// (word, count) ordered by count descending, then word ascending.
  std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;

  /// Same as sorted_entries() but cached; what the suggester scans.
  const std::vector<std::pair<std::string, std::uint64_t>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::string key(std::string_view word) const;

  std::unordered_map<std::string, std::uint64_t> counts_;
  std::vector<std::pair<std::string, std::uint64_t>> entries_;
  bool case_sensitive_ = true;
};

/// Tokens occurring at least `min_count` times. min_count must be >= 1.
Vocabulary build_vocab(std::span<const std::string> corpus, std::uint64_t min_count);

/// `<word> <count>` per line, in sorted_entries() order.
void write_vocab(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocab(std::istream& in, bool case_sensitive = true);
Vocabulary read_vocab_file(const std::string& path, bool case_sensitive = true);

enum class PartOfSpeech { Verb, Noun, Adjective };

/// Lemma + POS -> inflected forms, with a reverse index from any form to
/// the entries that contain it.
class InflectionDB {
 public:
  struct Entry {
    std::string lemma;
    PartOfSpeech pos;
    std::vector<std::string> forms;  // lemma first, then file order, no duplicates
  };

  void add(std::string lemma, PartOfSpeech pos, const std::vector<std::string>& forms);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Indices into entries() whose form list contains `form`.
  std::span<const std::size_t> entries_containing(std::string_view form) const;
  /// All forms sharing an entry with `form`, including `form` itself;
  /// empty when the form is unknown.
  std::vector<std::string> lookup(std::string_view form) const;

  std::size_t skipped_lines() const noexcept { return skipped_; }
  void note_skipped() noexcept { ++skipped_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_form_;
  std::size_t skipped_ = 0;
};

/// AGID `infl.txt` syntax: `<lemma> <POS>: <slot>, <slot>, ...` with `|`
/// separating alternatives inside a slot. Quality markers (?~!<) and
/// `{...}` suffixes are stripped; lines with other POS tags or without a
/// colon are counted in skipped_lines().
InflectionDB load_inflections(std::istream& in);
InflectionDB load_inflections_file(const std::string& path);

enum class OovPolicy { Unk, Drop };

OovPolicy parse_oov_policy(std::string_view name);
std::string_view to_string(OovPolicy policy) noexcept;

/// Other forms of `word` across every entry that lists it, in inflection
/// file order. Forms missing from `vocab` become "[UNK]" (once) or vanish,
/// depending on policy.
std::vector<std::string> forms_of(std::string_view word, const InflectionDB& db,
                                  const Vocabulary& vocab, OovPolicy policy = OovPolicy::Unk);

struct FunctionWordSets {
  std::vector<std::string> prepositions;  // inventory order, lowercase
  std::vector<std::string> determiners;

  bool is_preposition(std::string_view lower_word) const;
  bool is_determiner(std::string_view lower_word) const;
};

/// One entry per non-empty line; `#` starts a comment. Entries are
/// lowercased and deduplicated in first-seen order. Throws InputError
/// when the list is empty.
std::vector<std::string> read_word_list(std::istream& in);
std::vector<std::string> read_word_list_file(const std::string& path);
FunctionWordSets load_function_words(const std::string& prepositions_path,
                                     const std::string& determiners_path);

/// Restricted Damerau-Levenshtein (optimal string alignment) distance,
/// giving up once the result must exceed `limit`. Returns limit + 1 then.
std::size_t damerau_levenshtein(std::string_view a, std::string_view b,
                                std::size_t limit = static_cast<std::size_t>(-1));

struct SpellOptions {
  std::size_t max_distance = 2;
  std::size_t max_suggestions = 10;
};

/// Vocabulary words within max_distance of `word`, ordered by distance,
/// then frequency (descending), then spelling. `word` must not be in the
/// vocabulary (InputError otherwise).
std::vector<std::string> spell_suggest(std::string_view word, const Vocabulary& vocab,
                                       const SpellOptions& options = {});

/// Everything confusion-set generation reads.
struct Lexicon {
  Vocabulary vocab;
  InflectionDB inflections;
  FunctionWordSets function_words;
};

}  // namespace lmgec
