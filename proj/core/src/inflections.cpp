#include <algorithm>
#include <fstream>
#include <optional>
#include <istream>
#include <unordered_set>

#include "lmgec/error.hpp"
#include "lmgec/lexicon.hpp"
#include "lmgec/text.hpp"

namespace lmgec {

namespace {

// Drops {...} groups and the ?~!< quality markers, then trims.
std::string clean_form(std::string_view raw) {
  std::string out;
  int depth = 0;
  for (char c : raw) {
    if (c == '{') {
      ++depth;
    } else if (c == '}') {
      depth = std::max(0, depth - 1);
    } else if (depth == 0 && c != '?' && c != '~' && c != '!' && c != '<') {
      out += c;
    }
  }
  auto words = split_whitespace(out);
  return words.size() == 1 ? words.front() : std::string{};
}

std::optional<PartOfSpeech> parse_pos(std::string_view raw) {
  std::string tag = clean_form(raw);
  if (tag == "V") return PartOfSpeech::Verb;
  if (tag == "N") return PartOfSpeech::Noun;
  if (tag == "A") return PartOfSpeech::Adjective;
  return std::nullopt;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

}  // namespace

void InflectionDB::add(std::string lemma, PartOfSpeech pos, const std::vector<std::string>& forms) {
  Entry entry{std::move(lemma), pos, {}};
  std::unordered_set<std::string> seen;
  entry.forms.push_back(entry.lemma);
  seen.insert(entry.lemma);
  for (const auto& f : forms) {
    if (seen.insert(f).second) entry.forms.push_back(f);
  }
  const std::size_t index = entries_.size();
  for (const auto& f : entry.forms) by_form_[f].push_back(index);
  entries_.push_back(std::move(entry));
}

std::span<const std::size_t> InflectionDB::entries_containing(std::string_view form) const {
  auto it = by_form_.find(std::string(form));
  if (it == by_form_.end()) return {};
  return it->second;
}

std::vector<std::string> InflectionDB::lookup(std::string_view form) const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (std::size_t idx : entries_containing(form)) {
    for (const auto& f : entries_[idx].forms) {
      if (seen.insert(f).second) out.push_back(f);
    }
  }
  return out;
}

InflectionDB load_inflections(std::istream& in) {
  InflectionDB db;
  std::string line;
  while (std::getline(in, line)) {
    if (split_whitespace(line).empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      db.note_skipped();
      continue;
    }
    auto head = split_whitespace(std::string_view(line).substr(0, colon));
    if (head.size() != 2) {
      db.note_skipped();
      continue;
    }
    auto pos = parse_pos(head[1]);
    std::string lemma = clean_form(head[0]);
    if (!pos || lemma.empty()) {
      db.note_skipped();
      continue;
    }
    std::vector<std::string> forms;
    for (auto slot : split_on(std::string_view(line).substr(colon + 1), ',')) {
      for (auto alt : split_on(slot, '|')) {
        std::string form = clean_form(alt);
        if (!form.empty()) forms.push_back(std::move(form));
      }
    }
    if (forms.empty()) {
      db.note_skipped();
      continue;
    }
    db.add(std::move(lemma), *pos, forms);
  }
  if (in.bad()) throw IoError("read error while loading inflections");
  return db;
}

InflectionDB load_inflections_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open inflection file '" + path + "'");
  return load_inflections(in);
}

OovPolicy parse_oov_policy(std::string_view name) {
  if (name == "unk") return OovPolicy::Unk;
  if (name == "drop") return OovPolicy::Drop;
  throw InputError("unknown OOV policy '" + std::string(name) + "' (expected unk|drop)");
}

std::string_view to_string(OovPolicy policy) noexcept {
  return policy == OovPolicy::Unk ? "unk" : "drop";
}

std::vector<std::string> forms_of(std::string_view word, const InflectionDB& db,
                                  const Vocabulary& vocab, OovPolicy policy) {
  std::vector<std::string> out;
  bool unk_added = false;
  for (auto& form : db.lookup(word)) {
    if (form == word) continue;
    if (vocab.contains(form)) {
      out.push_back(std::move(form));
    } else if (policy == OovPolicy::Unk && !unk_added) {
      out.emplace_back(kUnknownToken);
      unk_added = true;
    }
  }
  return out;
}

}  // namespace lmgec
