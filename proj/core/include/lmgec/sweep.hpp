#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lmgec/eval.hpp"
#include "lmgec/lexicon.hpp"
#include "lmgec/m2.hpp"
#include "lmgec/scorer.hpp"
#include "lmgec/search.hpp"

namespace lmgec {

inline const std::vector<double> kDefaultTauGrid = {0.0, 2.0, 4.0, 6.0, 8.0};

struct SweepRow {
  double tau = 0.0;
  EvalCounts counts;
  double precision = 1.0;
  double recall = 1.0;
  double f = 0.0;
  std::size_t edits = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // in the order of the requested taus
  std::size_t best = 0;        // highest F; ties go to the larger tau
};

/// Corrects the dev sources once per tau and scores each run against the
/// gold annotations. Candidate sets are generated once and shared.
SweepResult sweep_tau(std::span<const M2Entry> dev, const Lexicon& lex, Scorer& scorer,
                      std::span<const double> taus, const CorpusOptions& corpus_options = {},
                      const EvalOptions& eval_options = {});

}  // namespace lmgec
