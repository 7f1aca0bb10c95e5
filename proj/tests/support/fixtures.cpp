#include "fixtures.hpp"

#include <sstream>

#include "synthetic.hpp"

namespace lmgec::testing {

std::string data_dir() { return LMGEC_TEST_DATA_DIR; }
std::string fixture_dir() { return LMGEC_TEST_FIXTURE_DIR; }
std::string stub_scorer_path() { return fixture_dir() + "/stub_scorer.py"; }

FunctionWordSets shipped_function_words() {
  return load_function_words(data_dir() + "/prepositions.txt", data_dir() + "/determiners.txt");
}

Lexicon lexicon_for(const std::vector<Sentence>& corpus) {
  std::vector<std::string> tokens;
  for (const auto& s : corpus) tokens.insert(tokens.end(), s.words().begin(), s.words().end());
  std::istringstream infl(synthetic::inflection_file());
  return Lexicon{build_vocab(tokens, 1), load_inflections(infl), shipped_function_words()};
}

FunctionScorer table_scorer(std::unordered_map<std::string, double> table, double fallback) {
  return FunctionScorer([table = std::move(table), fallback](const Sentence& s) {
    auto it = table.find(s.text());
    return it == table.end() ? fallback : it->second;
  });
}

}  // namespace lmgec::testing
