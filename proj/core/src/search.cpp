#include "lmgec/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lmgec/error.hpp"

namespace lmgec {

namespace {

std::vector<std::string> substitute(const std::vector<std::string>& words, std::size_t pos,
                                    const std::string& replacement) {
  std::vector<std::string> out;
  out.reserve(words.size() + 2);
  out.insert(out.end(), words.begin(), words.begin() + static_cast<std::ptrdiff_t>(pos));
  for (auto& w : split_whitespace(replacement)) out.push_back(std::move(w));
  out.insert(out.end(), words.begin() + static_cast<std::ptrdiff_t>(pos + 1), words.end());
  return out;
}

}  // namespace

std::vector<Edit> CorrectionResult::projected_edits() const {
  std::vector<Edit> out;
  out.reserve(applied.size());
  for (const auto& a : applied) out.push_back(a.edit);
  std::sort(out.begin(), out.end(), [](const Edit& a, const Edit& b) { return a.start < b.start; });
  return out;
}

CorrectionResult correct_sentence(const Sentence& s, std::span<const CandidateSet> candidates,
                                  Scorer& scorer, const SearchOptions& options) {
  if (!(options.tau >= 0.0)) throw InputError("tau must be >= 0");

  CorrectionResult result;
  result.original = s;
  result.corrected = s;
  result.original_score = scorer.score(s);
  if (candidates.empty() || std::isinf(options.tau)) return result;

  std::vector<const CandidateSet*> order;
  for (const auto& c : candidates) {
    if (c.end != c.start + 1 || c.end > s.size()) {
      throw InputError("candidate sets must cover exactly one token of the sentence");
    }
    order.push_back(&c);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const CandidateSet* a, const CandidateSet* b) { return a->start < b->start; });

  std::vector<std::string> working = s.words();
  double working_score = result.original_score;
  // Original token index -> current index; nullopt once deleted.
  std::vector<std::optional<std::size_t>> position(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) position[i] = i;
  std::vector<bool> edited(s.size(), false);

  for (int pass = 0; pass < std::max(1, options.max_passes); ++pass) {
    bool changed = false;
    for (const CandidateSet* set : order) {
      const std::size_t orig = set->start;
      if (edited[orig] || !position[orig]) continue;
      const std::size_t pos = *position[orig];
      if (working[pos] != s[orig]) continue;

      std::vector<Sentence> variants;
      std::vector<const std::string*> labels;
      for (const auto& alt : set->alternatives) {
        auto words = substitute(working, pos, alt);
        if (words.empty()) continue;  // never delete the last token
        variants.emplace_back(std::move(words));
        labels.push_back(&alt);
      }
      if (variants.empty()) continue;

      std::vector<double> scores;
      if (options.batch_scoring) {
        scores = scorer.score_batch(variants);
      } else {
        scores.reserve(variants.size());
        for (const auto& v : variants) scores.push_back(scorer.score(v));
      }
      std::size_t best = 0;
      for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[best]) best = k;
      }
      if (!(scores[best] > working_score + options.tau)) continue;

      AppliedEdit applied;
      applied.edit = Edit{orig, orig + 1, *labels[best], std::string(to_string(set->category))};
      applied.working_start = pos;
      applied.score_before = working_score;
      applied.score_after = scores[best];
      result.applied.push_back(std::move(applied));

      const auto new_len = static_cast<std::ptrdiff_t>(variants[best].size());
      const auto delta = new_len - static_cast<std::ptrdiff_t>(working.size());
      working = variants[best].words();
      working_score = scores[best];
      edited[orig] = true;
      if (delta == -1) position[orig].reset();
      for (std::size_t j = orig + 1; j < s.size(); ++j) {
        if (position[j]) position[j] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(*position[j]) + delta);
      }
      changed = true;
    }
    if (!changed) break;
  }
  result.corrected = Sentence(std::move(working));
  return result;
}

std::vector<Sentence> replay_working_sentences(const CorrectionResult& result) {
  std::vector<Sentence> out;
  Sentence current = result.original;
  for (const auto& a : result.applied) {
    out.push_back(current);
    const Edit e{a.working_start, a.working_start + 1, a.edit.replacement, a.edit.type_label};
    current = apply_edits(current, std::span<const Edit>(&e, 1));
  }
  out.push_back(std::move(current));
  return out;
}

CorpusReport correct_corpus(std::span<const Sentence> sentences,
                            std::span<const std::vector<CandidateSet>> candidates, Scorer& scorer,
                            const CorpusOptions& options) {
  if (candidates.size() != sentences.size()) {
    throw InputError("one candidate list per sentence required");
  }
  CorpusReport report;
  report.entries.resize(sentences.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto worker = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sentences.size()) return;
      auto& entry = report.entries[i];
      try {
        entry.result = correct_sentence(sentences[i], candidates[i], scorer, options.search);
      } catch (const ScorerUnavailable&) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        abort = true;
        return;
      } catch (const std::exception& e) {
        entry.result = CorrectionResult{};
        entry.result.original = sentences[i];
        entry.result.corrected = sentences[i];
        entry.result.original_score = std::nan("");
        entry.error = e.what();
      }
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || sentences.size() < 2) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  for (const auto& e : report.entries) {
    if (e.error) ++report.failed;
    report.edits += e.result.applied.size();
  }
  return report;
}

CorpusReport correct_corpus(std::span<const Sentence> sentences, const Lexicon& lex, Scorer& scorer,
                            const CorpusOptions& options) {
  std::vector<std::vector<CandidateSet>> candidates;
  candidates.reserve(sentences.size());
  for (const auto& s : sentences) {
    candidates.push_back(s.empty() ? std::vector<CandidateSet>{} : generate_candidates(s, lex, options.confusion));
  }
  return correct_corpus(sentences, candidates, scorer, options);
}

}  // namespace lmgec
