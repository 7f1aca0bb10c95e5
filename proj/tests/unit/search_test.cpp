#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "lmgec/error.hpp"
#include "lmgec/ngram.hpp"
#include "lmgec/search.hpp"
#include "lmgec/sweep.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace lmgec {
namespace {

using testing::FunctionScorer;

const Sentence kKnows{"They", "all", "knows", "where", "the", "conference", "is", "and", "when", "."};

std::vector<CandidateSet> knows_candidates() {
  return {CandidateSet{2, 3, ErrorCategory::Morph, {"know", "knowing", "knew"}}};
}

FunctionScorer knows_scorer() {
  std::vector<std::string> w = kKnows.words();
  w[2] = "know";
  return testing::table_scorer({{kKnows.text(), -50.0}, {Sentence(w).text(), -45.0}}, -70.0);
}

TEST(CorrectSentence, AcceptsWhenMarginExceedsTau) {
  auto scorer = knows_scorer();
  const auto cands = knows_candidates();
  const auto r = correct_sentence(kKnows, cands, scorer, {.tau = 4.0});
  ASSERT_EQ(r.applied.size(), 1u);
  EXPECT_EQ(r.corrected[2], "know");
  EXPECT_EQ(r.applied[0].edit, (Edit{2, 3, "know", "MORPH"}));
  EXPECT_EQ(r.applied[0].score_before, -50.0);
  EXPECT_EQ(r.applied[0].score_after, -45.0);
}

TEST(CorrectSentence, RejectsWhenMarginDoesNotExceedTau) {
  auto scorer = knows_scorer();
  const auto cands = knows_candidates();
  for (double tau : {5.0, 6.0, kTauOff}) {
    const auto r = correct_sentence(kKnows, cands, scorer, {.tau = tau});
    EXPECT_EQ(r.corrected, kKnows) << tau;
    EXPECT_TRUE(r.applied.empty());
  }
}

TEST(CorrectSentence, EmptyCandidatesIsIdentity) {
  auto scorer = knows_scorer();
  const auto r = correct_sentence(kKnows, {}, scorer, {});
  EXPECT_EQ(r.corrected, kKnows);
  EXPECT_TRUE(r.applied.empty());
  EXPECT_EQ(r.original_score, -50.0);
}

TEST(CorrectSentence, RejectsNegativeTau) {
  auto scorer = knows_scorer();
  EXPECT_THROW(correct_sentence(kKnows, knows_candidates(), scorer, {.tau = -1.0}), InputError);
  EXPECT_THROW(correct_sentence(kKnows, knows_candidates(), scorer, {.tau = std::nan("")}), InputError);
}

TEST(CorrectSentence, TiesNeverChangeTheSentence) {
  FunctionScorer flat([](const Sentence&) { return -3.0; });
  const auto r = correct_sentence(kKnows, knows_candidates(), flat, {.tau = 0.0});
  EXPECT_EQ(r.corrected, kKnows);
}

TEST(CorrectSentence, TiedAlternativesResolveToListOrder) {
  FunctionScorer s([](const Sentence& x) { return x[2] == "knows" ? -10.0 : -1.0; });
  const auto r = correct_sentence(kKnows, knows_candidates(), s, {.tau = 0.0});
  EXPECT_EQ(r.corrected[2], "know");
}

TEST(CorrectSentence, DeletionShiftsLaterPositions) {
  // Deleting "to" shifts the determiner at 4 to working position 3.
  const Sentence s{"we", "go", "to", "the", "a", "house"};
  const std::vector<CandidateSet> cands{
      CandidateSet{2, 3, ErrorCategory::Prep, {"in", ""}},
      CandidateSet{3, 4, ErrorCategory::Det, {"a", ""}},
      CandidateSet{4, 5, ErrorCategory::Det, {"the", ""}},
  };
  // Favors "we go the house".
  FunctionScorer scorer([](const Sentence& x) {
    const std::string t = x.text();
    if (t == "we go the house") return -1.0;
    if (t == "we go the a house") return -5.0;
    return -20.0 - static_cast<double>(x.size());
  });
  const auto r = correct_sentence(s, cands, scorer, {.tau = 0.0});
  EXPECT_EQ(r.corrected.text(), "we go the house");
  ASSERT_EQ(r.applied.size(), 2u);
  EXPECT_EQ(r.applied[0].edit, (Edit{2, 3, "", "PREP"}));
  EXPECT_EQ(r.applied[1].edit, (Edit{4, 5, "", "DET"}));
  EXPECT_EQ(r.applied[1].working_start, 3u);
  EXPECT_EQ(apply_edits(s, r.projected_edits()), r.corrected);
  const auto replay = replay_working_sentences(r);
  ASSERT_EQ(replay.size(), 3u);
  EXPECT_EQ(replay.back(), r.corrected);
}

TEST(CorrectSentence, NeverDeletesTheLastToken) {
  const Sentence s{"the"};
  FunctionScorer scorer([](const Sentence& x) { return x.empty() ? 0.0 : -10.0 - static_cast<double>(x[0].size()); });
  const std::vector<CandidateSet> cands{CandidateSet{0, 1, ErrorCategory::Det, {""}}};
  const auto r = correct_sentence(s, cands, scorer, {.tau = 0.0});
  EXPECT_EQ(r.corrected, s);
  EXPECT_EQ(scorer.calls(), 1u);
}

TEST(CorrectSentence, ScorerCallsStayWithinCostBound) {
  const auto corpus = synthetic::clean_corpus(5, 3000);
  const auto lex = testing::lexicon_for(corpus);
  FunctionScorer scorer([](const Sentence& x) {
    double h = 0;
    for (const auto& w : x.words()) h += static_cast<double>(std::hash<std::string>{}(w) % 97);
    return -h / 7.0;
  });
  for (const auto& s : corpus) {
    const auto cands = generate_candidates(s, lex);
    for (int passes : {1, 3}) {
      std::size_t bound = 0;
      for (const auto& c : cands) bound += c.alternatives.size();
      bound = 1 + bound * static_cast<std::size_t>(passes);
      const std::size_t before = scorer.calls();
      correct_sentence(s, cands, scorer, {.tau = 0.0, .max_passes = passes, .batch_scoring = false});
      EXPECT_LE(scorer.calls() - before, bound);
    }
  }
}

TEST(CorrectSentence, SingleCandidateMatchesBruteForce) {
  const auto corpus = synthetic::clean_corpus(9, 8000);
  const auto lex = testing::lexicon_for(corpus);
  const auto model = train_ngram(corpus, NGramOptions{});
  NGramScorer scorer(model);
  std::mt19937_64 rng(99);
  std::size_t checked = 0;
  for (const auto& s : corpus) {
    auto cands = generate_candidates(s, lex);
    if (cands.empty()) continue;
    const auto keep = cands[rng() % cands.size()];
    const std::vector<CandidateSet> one{keep};
    for (double tau : kDefaultTauGrid) {
      EXPECT_EQ(correct_sentence(s, one, scorer, {.tau = tau}).corrected, oracle::single_candidate(s, keep, scorer, tau))
          << s.text() << " tau=" << tau;
    }
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(CorrectSentence, RecordedMarginsReproduceOnRescoring) {
  const auto clean = synthetic::clean_corpus(13, 6000);
  const auto lex = testing::lexicon_for(clean);
  const auto model = train_ngram(clean, NGramOptions{});
  NGramScorer scorer(model);
  const auto noisy = synthetic::corrupt(clean, 14, lex.function_words);
  for (const auto& e : noisy) {
    const auto cands = generate_candidates(e.source, lex);
    for (double tau : {0.0, 2.0}) {
      const auto r = correct_sentence(e.source, cands, scorer, {.tau = tau, .max_passes = 2});
      const auto replay = replay_working_sentences(r);
      for (std::size_t k = 0; k < r.applied.size(); ++k) {
        const auto& a = r.applied[k];
        EXPECT_GT(a.score_after, a.score_before + tau);
        EXPECT_EQ(scorer.score(replay[k]), a.score_before);
        EXPECT_EQ(scorer.score(replay[k + 1]), a.score_after);
      }
      EXPECT_EQ(replay.back(), r.corrected);
      EXPECT_EQ(apply_edits(e.source, r.projected_edits()), r.corrected);
    }
  }
}

TEST(CorrectSentence, BatchAndSequentialScoringAgree) {
  const auto clean = synthetic::clean_corpus(21, 3000);
  const auto lex = testing::lexicon_for(clean);
  NGramScorer scorer(train_ngram(clean, NGramOptions{}));
  const auto noisy = synthetic::corrupt(clean, 22, lex.function_words);
  for (const auto& e : noisy) {
    const auto cands = generate_candidates(e.source, lex);
    const auto a = correct_sentence(e.source, cands, scorer, {.tau = 0.0, .batch_scoring = true});
    const auto b = correct_sentence(e.source, cands, scorer, {.tau = 0.0, .batch_scoring = false});
    EXPECT_EQ(a.corrected, b.corrected);
  }
}

TEST(CorrectCorpus, EmptyAndSingleton) {
  const auto corpus = synthetic::clean_corpus(3, 200);
  const auto lex = testing::lexicon_for(corpus);
  NGramScorer scorer(train_ngram(corpus, NGramOptions{}));
  EXPECT_TRUE(correct_corpus(std::span<const Sentence>{}, lex, scorer).entries.empty());
  const auto one = correct_corpus(std::span(corpus.data(), 1), lex, scorer);
  ASSERT_EQ(one.entries.size(), 1u);
  EXPECT_EQ(one.entries[0].result.corrected,
            correct_sentence(corpus[0], generate_candidates(corpus[0], lex), scorer).corrected);
}

TEST(CorrectCorpus, MatchesPerSentenceAndIsJobIndependent) {
  const auto clean = synthetic::clean_corpus(17, 2500);
  const auto lex = testing::lexicon_for(clean);
  NGramScorer scorer(train_ngram(clean, NGramOptions{}));
  const auto noisy = synthetic::corrupt(clean, 18, lex.function_words);
  std::vector<Sentence> sources;
  for (std::size_t i = 0; i < noisy.size() && sources.size() < 100; ++i) sources.push_back(noisy[i].source);
  ASSERT_EQ(sources.size(), 100u);

  const auto serial = correct_corpus(sources, lex, scorer, {.search = {.tau = 0.0}, .jobs = 1});
  const auto parallel = correct_corpus(sources, lex, scorer, {.search = {.tau = 0.0}, .jobs = 4});
  ASSERT_EQ(serial.entries.size(), sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto direct = correct_sentence(sources[i], generate_candidates(sources[i], lex), scorer, {.tau = 0.0});
    EXPECT_EQ(serial.entries[i].result.corrected, direct.corrected);
    EXPECT_EQ(parallel.entries[i].result.corrected, direct.corrected);
  }
  EXPECT_EQ(serial.edits, parallel.edits);
  EXPECT_EQ(serial.failed, 0u);
}

TEST(CorrectCorpus, CollectsPerSentenceErrors) {
  const std::vector<Sentence> sents{Sentence{"a", "b"}, Sentence{"bad"}, Sentence{"c"}};
  FunctionScorer scorer([](const Sentence& s) -> double {
    if (!s.empty() && s[0] == "bad") throw ScorerError("nope");
    return -1.0;
  });
  const std::vector<std::vector<CandidateSet>> cands(3);
  const auto r = correct_corpus(sents, cands, scorer, {.jobs = 2});
  EXPECT_EQ(r.failed, 1u);
  ASSERT_TRUE(r.entries[1].error.has_value());
  EXPECT_EQ(r.entries[1].result.corrected, sents[1]);
  EXPECT_FALSE(r.entries[0].error.has_value());
}

TEST(CorrectCorpus, UnavailableScorerAbortsRun) {
  const std::vector<Sentence> sents{Sentence{"a"}, Sentence{"b"}};
  FunctionScorer scorer([](const Sentence&) -> double { throw ScorerUnavailable("down"); });
  const std::vector<std::vector<CandidateSet>> cands(2);
  EXPECT_THROW(correct_corpus(sents, cands, scorer), ScorerUnavailable);
}

}  // namespace
}  // namespace lmgec
