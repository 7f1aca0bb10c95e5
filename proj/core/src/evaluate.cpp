#include <optional>

#include <nlohmann/json.hpp>

#include "lmgec/error.hpp"
#include "lmgec/eval.hpp"

namespace lmgec {

double precision(const EvalCounts& c) noexcept {
  const auto denom = c.tp + c.fp;
  return denom == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall(const EvalCounts& c) noexcept {
  const auto denom = c.tp + c.fn;
  return denom == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f_beta(double p, double r, double beta) noexcept {
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * p * r / denom;
}

namespace {

std::size_t distinct_gold(const std::vector<Edit>& gold, const MatchOptions& options) {
  std::size_t n = 0;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    bool dup = false;
    for (std::size_t h = 0; h < g && !dup; ++h) dup = edit_matches_gold(gold[g], gold[h], options);
    if (!dup) ++n;
  }
  return n;
}

}  // namespace

EvalReport evaluate_corpus(std::span<const Sentence> sources, std::span<const Sentence> hypotheses,
                           std::span<const std::vector<GoldAnnotation>> golds,
                           const EvalOptions& options) {
  if (sources.size() != hypotheses.size() || sources.size() != golds.size()) {
    throw InputError("evaluation needs equal numbers of sources (" + std::to_string(sources.size()) +
                     "), hypotheses (" + std::to_string(hypotheses.size()) + ") and gold entries (" +
                     std::to_string(golds.size()) + ")");
  }
  static const std::vector<GoldAnnotation> kImplicitNoop{GoldAnnotation{0, {}}};

  EvalReport report;
  report.sentences.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto lattice = extract_lattice(sources[i], hypotheses[i], options.max_unchanged_words);
    const auto& annotators = golds[i].empty() ? kImplicitNoop : golds[i];

    std::optional<SentenceEval> chosen;
    double chosen_f = -1.0;
    for (const auto& ann : annotators) {
      SentenceEval e;
      e.annotator_id = ann.annotator_id;
      e.selected = maxmatch_select(lattice, ann, options.match);
      e.gold = ann.edits;
      const auto tp = count_gold_matches(e.selected, ann.edits, options.match);
      e.counts = EvalCounts{tp, e.selected.size() - tp, distinct_gold(ann.edits, options.match) - tp};
      const auto total = report.counts + e.counts;
      const double f = f_beta(precision(total), recall(total), options.beta);
      if (!chosen || f > chosen_f) {
        chosen_f = f;
        chosen = std::move(e);
      }
    }
    report.counts += chosen->counts;
    report.sentences.push_back(std::move(*chosen));
  }
  report.precision = precision(report.counts);
  report.recall = recall(report.counts);
  report.f = f_beta(report.precision, report.recall, options.beta);
  return report;
}

EvalReport evaluate_m2(std::span<const M2Entry> gold, std::span<const Sentence> hypotheses,
                       const EvalOptions& options) {
  std::vector<Sentence> sources;
  std::vector<std::vector<GoldAnnotation>> annotations;
  sources.reserve(gold.size());
  annotations.reserve(gold.size());
  for (const auto& e : gold) {
    sources.push_back(e.source);
    annotations.push_back(e.annotators);
  }
  return evaluate_corpus(sources, hypotheses, annotations, options);
}

std::string sentence_eval_json(const SentenceEval& e, std::size_t index) {
  auto edits = [](const std::vector<Edit>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : list) {
      arr.push_back({{"start", x.start}, {"end", x.end}, {"replacement", x.replacement}});
    }
    return arr;
  };
  nlohmann::json j = {{"sentence", index},       {"annotator", e.annotator_id},
                      {"tp", e.counts.tp},       {"fp", e.counts.fp},
                      {"fn", e.counts.fn},       {"selected", edits(e.selected)},
                      {"gold", edits(e.gold)}};
  return j.dump();
}

}  // namespace lmgec
