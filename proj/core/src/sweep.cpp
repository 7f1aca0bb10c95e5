#include "lmgec/sweep.hpp"

#include "lmgec/error.hpp"

namespace lmgec {

SweepResult sweep_tau(std::span<const M2Entry> dev, const Lexicon& lex, Scorer& scorer,
                      std::span<const double> taus, const CorpusOptions& corpus_options,
                      const EvalOptions& eval_options) {
  if (taus.empty()) throw InputError("sweep needs at least one tau");
  std::vector<Sentence> sources;
  std::vector<std::vector<CandidateSet>> candidates;
  sources.reserve(dev.size());
  candidates.reserve(dev.size());
  for (const auto& e : dev) {
    sources.push_back(e.source);
    candidates.push_back(e.source.empty() ? std::vector<CandidateSet>{}
                                          : generate_candidates(e.source, lex, corpus_options.confusion));
  }

  SweepResult result;
  for (double tau : taus) {
    CorpusOptions opts = corpus_options;
    opts.search.tau = tau;
    const auto corrected = correct_corpus(sources, candidates, scorer, opts);
    std::vector<Sentence> hyps;
    hyps.reserve(corrected.entries.size());
    for (const auto& entry : corrected.entries) hyps.push_back(entry.result.corrected);
    const auto report = evaluate_m2(dev, hyps, eval_options);
    result.rows.push_back(SweepRow{tau, report.counts, report.precision, report.recall, report.f, corrected.edits});
  }
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    const auto& cur = result.rows[result.best];
    if (row.f > cur.f || (row.f == cur.f && row.tau > cur.tau)) result.best = i;
  }
  return result;
}

}  // namespace lmgec
