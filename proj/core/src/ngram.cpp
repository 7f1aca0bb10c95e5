#include "lmgec/ngram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lmgec/error.hpp"
#include "lmgec/lexicon.hpp"

namespace lmgec {

namespace {

constexpr char kMagic[4] = {'L', 'M', 'G', 'C'};
constexpr std::uint16_t kFormatVersion = 1;
constexpr NGramModel::WordId kUnused = 0xFFFFFFFFu;

NGramModel::Gram make_gram(std::span<const NGramModel::WordId> ids) {
  NGramModel::Gram g;
  g.fill(kUnused);
  std::copy(ids.begin(), ids.end(), g.begin());
  return g;
}

template <typename T>
void put(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::uint64_t bits = 0;
  if constexpr (std::is_floating_point_v<T>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw IoError("truncated model file");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  if constexpr (std::is_floating_point_v<T>) {
    return std::bit_cast<T>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

template <typename Table>
std::vector<std::pair<NGramModel::Gram, std::uint64_t>> sorted_table(const Table& t) {
  std::vector<std::pair<NGramModel::Gram, std::uint64_t>> out(t.begin(), t.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t NGramModel::GramHash::operator()(const Gram& g) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (WordId id : g) {
    h ^= id;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

NGramModel::WordId NGramModel::id(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end() || it->second == kBos || it->second == kEos) return kUnk;
  return it->second;
}

std::vector<NGramModel::WordId> NGramModel::predictable_ids() const {
  std::vector<WordId> out;
  out.reserve(words_.size());
  for (WordId i = 0; i < words_.size(); ++i) {
    if (i != kBos) out.push_back(i);
  }
  return out;
}

void NGramModel::build_index() {
  index_.clear();
  for (WordId i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

void NGramModel::build_context_stats() {
  contexts_.assign(static_cast<std::size_t>(order_), {});
  for (int k = 1; k <= order_; ++k) {
    auto& ctx = contexts_[static_cast<std::size_t>(k - 1)];
    for (const auto& [gram, n] : counts_[static_cast<std::size_t>(k - 1)]) {
      Gram h = gram;
      h[static_cast<std::size_t>(k - 1)] = kUnused;
      auto& st = ctx[h];
      st.total += n;
      st.distinct += 1;
    }
  }
}

double NGramModel::level_probability(int level, WordId word, std::span<const WordId> history) const {
  const double uniform = 1.0 / static_cast<double>(words_.size() - 1);
  if (level == 0) return uniform;

  const std::size_t hlen = static_cast<std::size_t>(level - 1);
  std::array<WordId, kMaxNGramOrder> key;
  key.fill(kUnused);
  std::copy(history.end() - static_cast<std::ptrdiff_t>(hlen), history.end(), key.begin());

  const auto& ctx = contexts_[hlen];
  auto it = ctx.find(key);
  if (it == ctx.end() || it->second.total == 0) return level_probability(level - 1, word, history);

  key[hlen] = word;
  const auto& table = counts_[hlen];
  auto c_it = table.find(key);
  const double c = c_it == table.end() ? 0.0 : static_cast<double>(c_it->second);
  const double total = static_cast<double>(it->second.total);

  if (smoothing_ == Smoothing::Mle) return c / total;

  const double lower = level_probability(level - 1, word, history);
  const double backoff = discount_ * static_cast<double>(it->second.distinct) / total;
  return std::max(c - discount_, 0.0) / total + backoff * lower;
}

double NGramModel::probability(WordId word, std::span<const WordId> history) const {
  std::array<WordId, kMaxNGramOrder> padded;
  const std::size_t need = static_cast<std::size_t>(order_ - 1);
  const std::size_t have = std::min(need, history.size());
  std::fill(padded.begin(), padded.begin() + static_cast<std::ptrdiff_t>(need - have), kBos);
  std::copy(history.end() - static_cast<std::ptrdiff_t>(have), history.end(),
            padded.begin() + static_cast<std::ptrdiff_t>(need - have));
  return level_probability(order_, word, std::span<const WordId>(padded.data(), need));
}

double NGramModel::probability(std::string_view word, std::span<const std::string> history) const {
  std::vector<WordId> ids;
  ids.reserve(history.size());
  for (const auto& w : history) ids.push_back(w == kBosToken ? kBos : id(w));
  const WordId target = word == kEosToken ? kEos : id(word);
  return probability(target, ids);
}

std::vector<NGramModel::WordId> NGramModel::padded_ids(const Sentence& s) const {
  std::vector<WordId> ids(static_cast<std::size_t>(order_ - 1), kBos);
  ids.reserve(ids.size() + s.size() + 1);
  for (const auto& w : s.words()) ids.push_back(id(w));
  ids.push_back(kEos);
  return ids;
}

double NGramModel::sum_log_prob(const Sentence& s, bool include_eos) const {
  const auto ids = padded_ids(s);
  const std::size_t start = static_cast<std::size_t>(order_ - 1);
  const std::size_t stop = include_eos ? ids.size() : ids.size() - 1;
  double total = 0.0;
  for (std::size_t i = start; i < stop; ++i) {
    std::span<const WordId> hist(ids.data() + i - start, start);
    total += std::log(level_probability(order_, ids[i], hist));
  }
  return total;
}

double NGramModel::score(const Sentence& s) const { return sum_log_prob(s, true); }
double NGramModel::score_prefix(const Sentence& s) const { return sum_log_prob(s, false); }

NGramModel train_ngram(std::span<const Sentence> corpus, const NGramOptions& options) {
  if (options.order < 1 || options.order > kMaxNGramOrder) {
    throw TrainingError("n-gram order must be in [1, " + std::to_string(kMaxNGramOrder) + "]");
  }
  if (options.min_count < 1) throw TrainingError("min_count must be >= 1");
  if (corpus.empty()) throw TrainingError("cannot train on an empty corpus");

  NGramModel m;
  m.order_ = options.order;
  m.smoothing_ = options.smoothing;
  m.discount_ = options.discount;

  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& s : corpus) {
    for (const auto& w : s.words()) ++freq[w];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [w, n] : freq) {
    if (n >= options.min_count && w != kUnknownToken && w != kBosToken && w != kEosToken) {
      kept.emplace_back(w, n);
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  m.words_ = {std::string(kUnknownToken), std::string(kBosToken), std::string(kEosToken)};
  for (auto& [w, n] : kept) m.words_.push_back(w);
  m.build_index();

  const int n = m.order_;
  m.counts_.assign(static_cast<std::size_t>(n), {});
  auto& top = m.counts_.back();
  for (const auto& s : corpus) {
    const auto ids = m.padded_ids(s);
    for (std::size_t i = static_cast<std::size_t>(n - 1); i < ids.size(); ++i) {
      ++top[make_gram(std::span(ids).subspan(i + 1 - static_cast<std::size_t>(n), static_cast<std::size_t>(n)))];
    }
  }
  // Lower levels: suffixes of the level above, counted either by raw
  // frequency (MLE) or by number of distinct left extensions (KN).
  for (int k = n - 1; k >= 1; --k) {
    const auto& above = m.counts_[static_cast<std::size_t>(k)];
    auto& table = m.counts_[static_cast<std::size_t>(k - 1)];
    for (const auto& [gram, c] : above) {
      NGramModel::Gram suffix;
      suffix.fill(kUnused);
      std::copy(gram.begin() + 1, gram.begin() + 1 + k, suffix.begin());
      table[suffix] += m.smoothing_ == Smoothing::Mle ? c : 1;
    }
  }
  m.build_context_stats();
  return m;
}

void NGramModel::save(std::ostream& out) const {
  out.write(kMagic, 4);
  put<std::uint16_t>(out, kFormatVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(order_));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(smoothing_));
  put<double>(out, discount_);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(words_.size()));
  for (const auto& w : words_) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(w.size()));
    out.write(w.data(), static_cast<std::streamsize>(w.size()));
  }
  for (int k = 1; k <= order_; ++k) {
    const auto rows = sorted_table(counts(k));
    put<std::uint64_t>(out, rows.size());
    for (const auto& [gram, c] : rows) {
      for (int j = 0; j < k; ++j) put<std::uint32_t>(out, gram[static_cast<std::size_t>(j)]);
      put<std::uint64_t>(out, c);
    }
  }
  if (!out) throw IoError("failed writing model");
}

void NGramModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save(out);
}

NGramModel NGramModel::load(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw IoError("not an LMGC model file");
  const auto version = get<std::uint16_t>(in);
  if (version != kFormatVersion) throw IoError("unsupported model version " + std::to_string(version));
  NGramModel m;
  m.order_ = get<std::uint8_t>(in);
  if (m.order_ < 1 || m.order_ > kMaxNGramOrder) throw IoError("corrupt model: bad order");
  const auto smoothing = get<std::uint8_t>(in);
  if (smoothing > 1) throw IoError("corrupt model: bad smoothing mode");
  m.smoothing_ = static_cast<Smoothing>(smoothing);
  m.discount_ = get<double>(in);
  const auto vocab = get<std::uint32_t>(in);
  if (vocab < 3) throw IoError("corrupt model: vocabulary too small");
  m.words_.reserve(vocab);
  for (std::uint32_t i = 0; i < vocab; ++i) {
    const auto len = get<std::uint32_t>(in);
    std::string w(len, '\0');
    if (!in.read(w.data(), len)) throw IoError("truncated model file");
    m.words_.push_back(std::move(w));
  }
  m.build_index();
  m.counts_.assign(static_cast<std::size_t>(m.order_), {});
  for (int k = 1; k <= m.order_; ++k) {
    const auto rows = get<std::uint64_t>(in);
    auto& table = m.counts_[static_cast<std::size_t>(k - 1)];
    table.reserve(rows);
    for (std::uint64_t r = 0; r < rows; ++r) {
      Gram g;
      g.fill(kUnused);
      for (int j = 0; j < k; ++j) {
        g[static_cast<std::size_t>(j)] = get<std::uint32_t>(in);
        if (g[static_cast<std::size_t>(j)] >= vocab) throw IoError("corrupt model: word id out of range");
      }
      table[g] = get<std::uint64_t>(in);
    }
  }
  m.build_context_stats();
  return m;
}

NGramModel NGramModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  return load(in);
}

void NGramModel::dump_text(std::ostream& out) const {
  out << "order\t" << order_ << '\n'
      << "smoothing\t" << (smoothing_ == Smoothing::Mle ? "mle" : "kneser-ney") << '\n'
      << "discount\t" << discount_ << '\n'
      << "vocab\t" << words_.size() << '\n';
  for (int k = 1; k <= order_; ++k) {
    out << "\n\\" << k << "-grams\n";
    std::vector<std::pair<std::string, std::uint64_t>> rows;
    for (const auto& [gram, c] : counts(k)) {
      std::string text;
      for (int j = 0; j < k; ++j) {
        if (j) text += ' ';
        text += words_[gram[static_cast<std::size_t>(j)]];
      }
      rows.emplace_back(std::move(text), c);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [text, c] : rows) out << text << '\t' << c << '\n';
  }
}

std::string NGramScorer::describe() const {
  std::ostringstream s;
  s << "ngram(order=" << model_.order() << ", vocab=" << model_.vocab_size() << ", "
    << (model_.smoothing() == Smoothing::Mle ? "mle" : "kn") << ")";
  return s.str();
}

}  // namespace lmgec
