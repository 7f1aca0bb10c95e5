#include <algorithm>
#include <limits>
#include <numeric>

#include "lmgec/error.hpp"
#include "lmgec/lexicon.hpp"

namespace lmgec {

std::size_t damerau_levenshtein(std::string_view a, std::string_view b, std::size_t limit) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t over = limit == std::numeric_limits<std::size_t>::max() ? limit : limit + 1;
  const std::size_t diff = n > m ? n - m : m - n;
  if (diff > limit) return over;

  // Rows i-2, i-1, i of the optimal-string-alignment table.
  std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    std::size_t row_min = cur[0];
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t v = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        v = std::min(v, prev2[j - 2] + 1);
      }
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    // Every later cell is at least row_min or the previous row's minimum
    // (transpositions reach back two rows), so stop only when both exceed.
    if (row_min > limit && i > 1 && *std::min_element(prev.begin(), prev.end()) > limit) {
      return over;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return std::min(prev[m], over);
}

std::vector<std::string> spell_suggest(std::string_view word, const Vocabulary& vocab,
                                       const SpellOptions& options) {
  if (vocab.contains(word)) {
    throw InputError("spell_suggest called on in-vocabulary word '" + std::string(word) + "'");
  }
  struct Hit {
    std::size_t distance;
    std::size_t rank;
  };
  std::vector<Hit> hits;
  const auto& entries = vocab.entries();
  for (std::size_t rank = 0; rank < entries.size(); ++rank) {
    const auto& cand = entries[rank].first;
    const std::size_t d = damerau_levenshtein(word, cand, options.max_distance);
    if (d <= options.max_distance) hits.push_back({d, rank});
  }
  // entries() is already ordered by (frequency desc, word asc).
  std::stable_sort(hits.begin(), hits.end(),
                   [](const Hit& x, const Hit& y) { return x.distance < y.distance; });
  if (hits.size() > options.max_suggestions) hits.resize(options.max_suggestions);
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(entries[h.rank].first);
  return out;
}

}  // namespace lmgec
