#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "lmgec/confusion.hpp"
#include "synthetic.hpp"

namespace lmgec {
namespace {

bool has(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

TEST(Confusion, PrepositionAndDeterminerSetsForKnowsSentence) {
  const Sentence s = tokenize("It will start by a speech from the Director of the conference , followed by a meal .");
  const auto lex = testing::lexicon_for({s});
  const auto sets = generate_candidates(s, lex);

  auto at = [&](std::size_t pos) -> const CandidateSet* {
    for (const auto& c : sets) {
      if (c.start == pos) return &c;
    }
    return nullptr;
  };
  const CandidateSet* by = at(3);
  ASSERT_NE(by, nullptr);
  EXPECT_EQ(by->category, ErrorCategory::Prep);
  EXPECT_TRUE(has(by->alternatives, "with"));
  EXPECT_TRUE(has(by->alternatives, ""));
  EXPECT_EQ(by->alternatives.back(), "");
  EXPECT_FALSE(has(by->alternatives, "by"));

  const CandidateSet* a = at(4);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->category, ErrorCategory::Det);
  EXPECT_TRUE(has(a->alternatives, "the"));
  EXPECT_TRUE(has(a->alternatives, ""));
}

TEST(Confusion, MorphologySetForKnowsSentence) {
  const Sentence s = tokenize("They all knows where the conference is and when .");
  const auto lex = testing::lexicon_for({s, Sentence{"know", "knew", "known", "knowing"}});
  const auto sets = generate_candidates(s, lex);
  const auto it = std::find_if(sets.begin(), sets.end(), [](const CandidateSet& c) { return c.start == 2; });
  ASSERT_NE(it, sets.end());
  EXPECT_EQ(it->category, ErrorCategory::Morph);
  for (const char* f : {"know", "knew", "known", "knowing"}) EXPECT_TRUE(has(it->alternatives, f)) << f;
  // "all" is a determiner and wins over anything else.
  EXPECT_EQ(sets[0].start, 1u);
  EXPECT_EQ(sets[0].category, ErrorCategory::Det);
}

TEST(Confusion, NothingForPlainInVocabularyWords) {
  const Sentence s{"quickly", "yes", "."};
  const auto lex = testing::lexicon_for({s});
  EXPECT_TRUE(generate_candidates(s, lex).empty());
}

TEST(Confusion, SpellingForNonWords) {
  const Sentence vocab_source{"the", "dog", "sat", "dig"};
  const auto lex = testing::lexicon_for({vocab_source, vocab_source});
  const auto sets = generate_candidates(Sentence{"the", "dgo", "sat"}, lex);
  ASSERT_GE(sets.size(), 2u);
  EXPECT_EQ(sets[1].start, 1u);
  EXPECT_EQ(sets[1].category, ErrorCategory::Spell);
  EXPECT_EQ(sets[1].alternatives.front(), "dog");
}

TEST(Confusion, SentenceInitialCapitalsAreNotMisspellings) {
  const Sentence vocab_source{"they", "walk", "to", "the", "park", "."};
  const auto lex = testing::lexicon_for({vocab_source});
  const auto sets = generate_candidates(Sentence{"They", "walk", "To", "the", "park", "."}, lex);
  for (const auto& c : sets) EXPECT_NE(c.category, ErrorCategory::Spell) << c.start;
  // Capitalized function words keep their capital in the alternatives.
  const auto to = std::find_if(sets.begin(), sets.end(), [](const CandidateSet& c) { return c.start == 2; });
  ASSERT_NE(to, sets.end());
  EXPECT_TRUE(has(to->alternatives, "At"));
  EXPECT_FALSE(has(to->alternatives, "To"));
}

TEST(Confusion, DropPolicyKeepsVocabularyOnly) {
  const Sentence s{"he", "walks", "to", "the", "park", "."};
  const auto lex = testing::lexicon_for({s, Sentence{"walk"}});
  ConfusionConfig cfg;
  cfg.oov_policy = OovPolicy::Drop;
  const auto sets = generate_candidates(s, lex, cfg);
  const auto walks = std::find_if(sets.begin(), sets.end(), [](const CandidateSet& c) { return c.start == 1; });
  ASSERT_NE(walks, sets.end());
  EXPECT_EQ(walks->alternatives, (std::vector<std::string>{"walk"}));

  cfg.oov_policy = OovPolicy::Unk;
  const auto with_unk = generate_candidates(s, lex, cfg);
  EXPECT_EQ(with_unk[0].alternatives, (std::vector<std::string>{"walk", "[UNK]"}));
}

// Invariants over the synthetic corpus: one set per token at most, sorted,
// single-token spans, no alternative equal to the token, epsilon only for
// function words, deterministic output.
TEST(Confusion, InvariantsOnSyntheticCorpus) {
  const auto clean = synthetic::clean_corpus(5, 4000);
  const auto lex = testing::lexicon_for(clean);
  const auto corrupted = synthetic::corrupt(clean, 6, lex.function_words);
  ConfusionConfig drop;
  drop.oov_policy = OovPolicy::Drop;
  for (const auto& entry : corrupted) {
    const auto& s = entry.source;
    const auto sets = generate_candidates(s, lex);
    EXPECT_EQ(sets, generate_candidates(s, lex));
    EXPECT_LE(sets.size(), s.size());
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const auto& c = sets[k];
      EXPECT_EQ(c.end, c.start + 1);
      if (k) EXPECT_LT(sets[k - 1].start, c.start);
      EXPECT_FALSE(c.alternatives.empty());
      for (const auto& alt : c.alternatives) {
        EXPECT_NE(alt, s[c.start]);
        if (alt.empty()) EXPECT_TRUE(c.category == ErrorCategory::Prep || c.category == ErrorCategory::Det);
      }
    }
    for (const auto& c : generate_candidates(s, lex, drop)) {
      for (const auto& alt : c.alternatives) {
        if (!alt.empty() && c.category != ErrorCategory::Prep && c.category != ErrorCategory::Det) {
          EXPECT_TRUE(lex.vocab.contains(alt)) << alt;
        }
      }
    }
  }
}

}  // namespace
}  // namespace lmgec
