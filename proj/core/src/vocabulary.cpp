#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "lmgec/error.hpp"
#include "lmgec/lexicon.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

Vocabulary::Vocabulary(std::unordered_map<std::string, std::uint64_t> counts, bool case_sensitive)
    : case_sensitive_(case_sensitive) {
  for (auto& [word, n] : counts) {
    if (n < 1) throw InputError("vocabulary count for '" + word + "' must be >= 1");
    counts_[key(word)] += n;
  }
  entries_ = sorted_entries();
}

std::string Vocabulary::key(std::string_view word) const {
  return case_sensitive_ ? std::string(word) : to_lower_ascii(word);
}

bool Vocabulary::contains(std::string_view word) const { return counts_.contains(key(word)); }

std::uint64_t Vocabulary::count(std::string_view word) const {
  auto it = counts_.find(key(word));
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> Vocabulary::sorted_entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> out(counts_.begin(), counts_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

Vocabulary build_vocab(std::span<const std::string> corpus, std::uint64_t min_count) {
  if (min_count < 1) throw InputError("min_count must be >= 1");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& tok : corpus) ++counts[tok];
  std::erase_if(counts, [&](const auto& kv) { return kv.second < min_count; });
  return Vocabulary(std::move(counts));
}

void write_vocab(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& [word, n] : vocab.entries()) out << word << ' ' << n << '\n';
}

Vocabulary read_vocab(std::istream& in, bool case_sensitive) {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(line_no, "expected '<word> <count>'");
    std::uint64_t n = 0;
    const auto& c = fields[1];
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), n);
    if (ec != std::errc{} || ptr != c.data() + c.size() || n == 0) {
      throw ParseError(line_no, "count must be a positive integer");
    }
    counts[fields[0]] += n;
  }
  return Vocabulary(std::move(counts), case_sensitive);
}

Vocabulary read_vocab_file(const std::string& path, bool case_sensitive) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vocabulary file '" + path + "'");
  return read_vocab(in, case_sensitive);
}

}  // namespace lmgec
