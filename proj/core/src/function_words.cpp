#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "lmgec/error.hpp"
#include "lmgec/lexicon.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

bool FunctionWordSets::is_preposition(std::string_view lower_word) const {
  return std::find(prepositions.begin(), prepositions.end(), lower_word) != prepositions.end();
}

bool FunctionWordSets::is_determiner(std::string_view lower_word) const {
  return std::find(determiners.begin(), determiners.end(), lower_word) != determiners.end();
}

std::vector<std::string> read_word_list(std::istream& in) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto words = split_whitespace(line);
    if (words.empty()) continue;
    std::string entry;
    for (const auto& w : words) {
      if (!entry.empty()) entry += ' ';
      entry += to_lower_ascii(w);
    }
    if (seen.insert(entry).second) out.push_back(std::move(entry));
  }
  if (out.empty()) throw InputError("word list is empty");
  return out;
}

std::vector<std::string> read_word_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list '" + path + "'");
  return read_word_list(in);
}

FunctionWordSets load_function_words(const std::string& prepositions_path,
                                     const std::string& determiners_path) {
  return FunctionWordSets{read_word_list_file(prepositions_path),
                          read_word_list_file(determiners_path)};
}

}  // namespace lmgec
