#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "lmgec/eval.hpp"
#include "lmgec/ngram.hpp"
#include "lmgec/search.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace {

using namespace lmgec;

struct Shared {
  std::vector<Sentence> corpus = synthetic::clean_corpus(77, 50000);
  Lexicon lex = testing::lexicon_for(corpus);
  NGramModel model = train_ngram(corpus, NGramOptions{});
  std::vector<M2Entry> noisy = synthetic::corrupt(synthetic::clean_corpus(78, 5000), 79, lex.function_words);
};

Shared& shared() {
  static Shared s;
  return s;
}

void BM_NGramScore(benchmark::State& state) {
  auto& s = shared();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.model.score(s.corpus[i++ % s.corpus.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NGramScore);

void BM_Train3Gram(benchmark::State& state) {
  auto& s = shared();
  for (auto _ : state) benchmark::DoNotOptimize(train_ngram(s.corpus, NGramOptions{}));
}
BENCHMARK(BM_Train3Gram)->Unit(benchmark::kMillisecond);

void BM_SpellSuggest(benchmark::State& state) {
  auto& s = shared();
  const std::vector<std::string> typos{"teahcer", "confernce", "bokos", "strat", "diretcor", "hosue"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spell_suggest(typos[i++ % typos.size()], s.lex.vocab));
  }
}
BENCHMARK(BM_SpellSuggest);

void BM_GenerateCandidates(benchmark::State& state) {
  auto& s = shared();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_candidates(s.noisy[i++ % s.noisy.size()].source, s.lex));
  }
}
BENCHMARK(BM_GenerateCandidates);

void BM_CorrectSentence(benchmark::State& state) {
  auto& s = shared();
  NGramScorer scorer(s.model);
  std::vector<std::vector<CandidateSet>> cands;
  for (const auto& e : s.noisy) cands.push_back(generate_candidates(e.source, s.lex));
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ % s.noisy.size();
    benchmark::DoNotOptimize(correct_sentence(s.noisy[k].source, cands[k], scorer, {.tau = 2.0}));
  }
}
BENCHMARK(BM_CorrectSentence);

void BM_MaxMatch(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<oracle::Triple> triples;
  for (int n = 0; n < 256; ++n) triples.push_back(oracle::random_triple(rng, static_cast<std::size_t>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& t = triples[i++ % triples.size()];
    benchmark::DoNotOptimize(maxmatch_select(extract_lattice(t.source, t.hypothesis), t.gold));
  }
}
BENCHMARK(BM_MaxMatch)->Arg(8)->Arg(40);

void BM_EvaluateCorpus(benchmark::State& state) {
  auto& s = shared();
  std::vector<Sentence> hyps;
  for (const auto& e : s.noisy) hyps.push_back(gold_corrected(e));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_m2(s.noisy, hyps));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.noisy.size()));
}
BENCHMARK(BM_EvaluateCorpus)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
