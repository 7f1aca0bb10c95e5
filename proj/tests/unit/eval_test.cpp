#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "lmgec/error.hpp"
#include "lmgec/ngram.hpp"
#include "lmgec/sweep.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace lmgec {
namespace {

TEST(Lattice, SingleSubstitution) {
  const auto l = extract_lattice(Sentence{"This", "are", "a", "test"}, Sentence{"This", "is", "a", "test"});
  ASSERT_EQ(l.arcs.size(), 1u);
  EXPECT_EQ(l.arcs[0].edit, (Edit{1, 2, "is", ""}));
}

TEST(Lattice, IdenticalSentencesHaveNoArcs) {
  const Sentence s{"a", "b"};
  EXPECT_TRUE(extract_lattice(s, s).empty());
}

TEST(Lattice, MergesAcrossShortGaps) {
  const Sentence src{"a", "b", "c", "d"};
  const Sentence hyp{"x", "b", "c", "y"};
  const auto l = extract_lattice(src, hyp, 2);
  ASSERT_EQ(l.atomic_count, 2u);
  ASSERT_EQ(l.arcs.size(), 3u);
  EXPECT_EQ(l.find(0, 0)->edit, (Edit{0, 1, "x", ""}));
  EXPECT_EQ(l.find(1, 1)->edit, (Edit{3, 4, "y", ""}));
  EXPECT_EQ(l.find(0, 1)->edit, (Edit{0, 4, "x b c y", ""}));
  EXPECT_EQ(extract_lattice(src, hyp, 1).arcs.size(), 2u);
}

TEST(Lattice, InsertionsAndDeletions) {
  const auto del = extract_lattice(Sentence{"go", "to", "home"}, Sentence{"go", "home"});
  ASSERT_EQ(del.arcs.size(), 1u);
  EXPECT_EQ(del.arcs[0].edit, (Edit{1, 2, "", ""}));
  const auto ins = extract_lattice(Sentence{"go", "home"}, Sentence{"go", "home", "now"});
  ASSERT_EQ(ins.arcs.size(), 1u);
  EXPECT_EQ(ins.arcs[0].edit, (Edit{2, 2, "now", ""}));
  // Equal-cost alternatives resolve to substitutions.
  const auto mixed = extract_lattice(Sentence{"go", "to", "home"}, Sentence{"go", "home", "now"});
  ASSERT_EQ(mixed.atomic_count, 1u);
  EXPECT_EQ(mixed.arcs[0].edit, (Edit{1, 3, "home now", ""}));
}

TEST(Lattice, AlignmentPrefersSubstitution) {
  const auto ops = align_tokens(Sentence{"a", "b"}, Sentence{"a", "c"});
  EXPECT_EQ(ops, (std::vector<AlignOp>{AlignOp::Match, AlignOp::Substitute}));
}

TEST(MaxMatch, SelectsMatchingAtomicArc) {
  const auto l = extract_lattice(Sentence{"This", "are", "a", "test"}, Sentence{"This", "is", "a", "test"});
  const GoldAnnotation g{0, {Edit{1, 2, "is", "SVA"}}};
  const auto sel = maxmatch_select(l, g);
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(count_gold_matches(sel, g.edits), 1u);
}

TEST(MaxMatch, PrefersMergedArcWhenGoldHasIt) {
  const Sentence src{"a", "b", "c", "d"};
  const Sentence hyp{"x", "b", "c", "y"};
  const auto l = extract_lattice(src, hyp);
  const auto merged = maxmatch_select(l, GoldAnnotation{0, {Edit{0, 4, "x b c y", ""}}});
  EXPECT_EQ(merged, (std::vector<Edit>{Edit{0, 4, "x b c y", ""}}));
  // With no gold hit, fewest edits wins: the single merged arc.
  const auto none = maxmatch_select(l, GoldAnnotation{0, {Edit{1, 2, "q", ""}}});
  EXPECT_EQ(none.size(), 1u);
  // Gold on the atomics: both atomics beat the merged arc.
  const auto atoms = maxmatch_select(l, GoldAnnotation{0, {Edit{0, 1, "x", ""}, Edit{3, 4, "y", ""}}});
  EXPECT_EQ(atoms.size(), 2u);
}

TEST(MaxMatch, EmptyLatticeSelectsNothing) {
  const Sentence s{"a", "b"};
  EXPECT_TRUE(maxmatch_select(extract_lattice(s, s), GoldAnnotation{0, {Edit{0, 1, "c", ""}}}).empty());
}

TEST(MaxMatch, EqualsBruteForceOracle) {
  std::mt19937_64 rng(2024);
  std::size_t mismatches = 0;
  for (int n = 0; n < 600; ++n) {
    const auto t = oracle::random_triple(rng);
    const auto l = extract_lattice(t.source, t.hypothesis);
    const auto got = maxmatch_select(l, t.gold);
    if (got != oracle::maxmatch(l, t.gold)) {
      ++mismatches;
      ADD_FAILURE() << t.source.text() << " -> " << t.hypothesis.text();
    }
    EXPECT_EQ(apply_edits(t.source, got), t.hypothesis);
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(Metrics, ReferenceF05Values) {
  EXPECT_NEAR(f_beta(0.5851, 0.2490), 0.4608, 0.005);
  EXPECT_NEAR(f_beta(0.6401, 0.3233), 0.5352, 0.005);
}

TEST(Metrics, Conventions) {
  EXPECT_EQ(precision({0, 0, 3}), 1.0);
  EXPECT_EQ(recall({0, 2, 0}), 1.0);
  EXPECT_EQ(f_beta(0.0, 0.0), 0.0);
  for (double p : {0.1, 0.37, 0.5, 0.99}) {
    EXPECT_NEAR(f_beta(p, p), p, 1e-12);
    EXPECT_NEAR(f_beta(p, p, 2.0), p, 1e-12);
  }
  EXPECT_DOUBLE_EQ(precision({3, 1, 0}), 0.75);
  EXPECT_DOUBLE_EQ(recall({3, 0, 1}), 0.75);
}

TEST(Evaluate, UnchangedHypothesis) {
  const std::vector<Sentence> src{Sentence{"He", "go", "home"}};
  const std::vector<std::vector<GoldAnnotation>> gold{{GoldAnnotation{0, {Edit{1, 2, "goes", ""}}}}};
  const auto r = evaluate_corpus(src, src, gold);
  EXPECT_EQ(r.counts, (EvalCounts{0, 0, 1}));
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f, 0.0);
}

TEST(Evaluate, PicksTheFavourableAnnotator) {
  const std::vector<Sentence> src{Sentence{"He", "go", "home"}};
  const std::vector<Sentence> hyp{Sentence{"He", "went", "home"}};
  const std::vector<std::vector<GoldAnnotation>> gold{
      {GoldAnnotation{0, {Edit{1, 2, "goes", ""}}}, GoldAnnotation{1, {Edit{1, 2, "went", ""}}}}};
  const auto r = evaluate_corpus(src, hyp, gold);
  EXPECT_EQ(r.sentences[0].annotator_id, 1);
  EXPECT_EQ(r.counts, (EvalCounts{1, 0, 0}));
}

TEST(Evaluate, NoopAnnotatorAndMissingAnnotators) {
  const std::vector<Sentence> src{Sentence{"fine"}, Sentence{"ok"}};
  const std::vector<std::vector<GoldAnnotation>> gold{{GoldAnnotation{0, {}}}, {}};
  const auto r = evaluate_corpus(src, src, gold);
  EXPECT_EQ(r.counts, (EvalCounts{0, 0, 0}));
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
}

TEST(Evaluate, LengthMismatch) {
  const std::vector<Sentence> src{Sentence{"a"}};
  const std::vector<Sentence> hyp;
  const std::vector<std::vector<GoldAnnotation>> gold{{}};
  EXPECT_THROW(evaluate_corpus(src, hyp, gold), InputError);
}

TEST(Evaluate, GoldCorrectedHypothesisHasFullRecall) {
  const auto clean = synthetic::clean_corpus(41, 4000);
  const auto noisy = synthetic::corrupt(clean, 42, testing::shipped_function_words());
  // Adjacent gold edits fuse into one alignment run and cannot be matched
  // separately, so keep entries whose gold edits are all lattice arcs.
  std::vector<M2Entry> expressible;
  std::size_t fused = 0;
  for (const auto& e : noisy) {
    const auto l = extract_lattice(e.source, gold_corrected(e));
    bool ok = true;
    for (const auto& g : e.annotators[0].edits) {
      ok = ok && std::any_of(l.arcs.begin(), l.arcs.end(), [&](const LatticeArc& a) { return a.edit.same_change(g); });
    }
    if (ok) {
      expressible.push_back(e);
    } else {
      ++fused;
    }
  }
  EXPECT_GT(fused, 0u);
  std::vector<Sentence> hyp;
  for (const auto& e : expressible) hyp.push_back(gold_corrected(e));
  const auto r = evaluate_m2(expressible, hyp);
  EXPECT_GT(r.counts.tp, 0u);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.precision, 1.0);
  for (std::size_t i = 0; i < expressible.size(); ++i) {
    EXPECT_EQ(apply_edits(expressible[i].source, r.sentences[i].selected), hyp[i]);
  }
}

TEST(Evaluate, PerSentenceJson) {
  const std::vector<Sentence> src{Sentence{"He", "go", "home"}};
  const std::vector<Sentence> hyp{Sentence{"He", "goes", "home"}};
  const std::vector<std::vector<GoldAnnotation>> gold{{GoldAnnotation{0, {Edit{1, 2, "goes", "MORPH"}}}}};
  const auto r = evaluate_corpus(src, hyp, gold);
  const auto json = sentence_eval_json(r.sentences[0], 0);
  EXPECT_NE(json.find("\"tp\":1"), std::string::npos) << json;
  EXPECT_EQ(json.find('\n'), std::string::npos);
}

class SweepFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    clean = synthetic::clean_corpus(51, 6000);
    lex = testing::lexicon_for(clean);
    dev = synthetic::corrupt(synthetic::clean_corpus(52, 2000), 53, lex.function_words);
  }
  std::vector<Sentence> clean;
  Lexicon lex;
  std::vector<M2Entry> dev;
};

TEST_F(SweepFixture, RowsFollowTheGrid) {
  NGramScorer scorer(train_ngram(clean, NGramOptions{}));
  const auto r = sweep_tau(dev, lex, scorer, kDefaultTauGrid);
  ASSERT_EQ(r.rows.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.rows[i].tau, kDefaultTauGrid[i]);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_LE(r.rows[i].edits, r.rows[i - 1].edits);
  for (const auto& row : r.rows) EXPECT_LE(row.f, r.rows[r.best].f);
  EXPECT_GT(r.rows[0].counts.tp, 0u);

  const std::vector<double> single{0.0};
  const auto one = sweep_tau(dev, lex, scorer, single);
  ASSERT_EQ(one.rows.size(), 1u);
  EXPECT_EQ(one.rows[0].counts, r.rows[0].counts);
}

TEST_F(SweepFixture, OffRowProposesNothing) {
  NGramScorer scorer(train_ngram(clean, NGramOptions{}));
  const std::vector<double> off{kTauOff};
  const auto r = sweep_tau(dev, lex, scorer, off);
  EXPECT_EQ(r.rows[0].edits, 0u);
  EXPECT_EQ(r.rows[0].precision, 1.0);
  EXPECT_EQ(r.rows[0].recall, 0.0);
}

TEST(SweepBest, TiesGoToLargerTau) {
  // Constant scorer: no edits at any tau, so every row ties.
  testing::FunctionScorer flat([](const Sentence&) { return -1.0; });
  const auto clean = synthetic::clean_corpus(61, 500);
  const auto lex = testing::lexicon_for(clean);
  const auto dev = synthetic::corrupt(clean, 62, lex.function_words);
  const auto r = sweep_tau(dev, lex, flat, kDefaultTauGrid);
  EXPECT_EQ(r.best, 4u);
}

}  // namespace
}  // namespace lmgec
