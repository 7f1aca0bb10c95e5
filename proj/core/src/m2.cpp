#include "lmgec/m2.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "lmgec/error.hpp"

namespace lmgec {

namespace {

constexpr std::string_view kSep = "|||";
constexpr std::string_view kNone = "-NONE-";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(kSep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + kSep.size();
  }
}

long long parse_int(std::string_view text, std::size_t line_no, std::string_view what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(line_no, "non-integer " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct BlockBuilder {
  std::optional<M2Entry> entry;
  std::map<int, GoldAnnotation> annotators;

  void finish(std::vector<M2Entry>& out) {
    if (!entry) return;
    for (auto& [id, ann] : annotators) {
      std::stable_sort(ann.edits.begin(), ann.edits.end(), [](const Edit& a, const Edit& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
      });
      entry->annotators.push_back(std::move(ann));
    }
    out.push_back(std::move(*entry));
    entry.reset();
    annotators.clear();
  }
};

void parse_annotation(std::string_view line, std::size_t line_no, BlockBuilder& block) {
  auto fields = split_fields(line.substr(2));
  if (fields.size() != 6) {
    throw ParseError(line_no, "expected 6 '|||'-separated fields, found " + std::to_string(fields.size()));
  }
  std::string_view span = fields[0];
  auto space = span.find(' ');
  if (space == std::string_view::npos) throw ParseError(line_no, "span needs '<start> <end>'");
  long long start = parse_int(span.substr(0, space), line_no, "start offset");
  long long end = parse_int(span.substr(space + 1), line_no, "end offset");
  int annotator = static_cast<int>(parse_int(trim(fields[5]), line_no, "annotator id"));

  auto& ann = block.annotators[annotator];
  ann.annotator_id = annotator;
  if (start == -1 && end == -1) return;  // noop
  if (start < 0 || end < 0) throw ParseError(line_no, "negative offset");
  if (end < start) throw ParseError(line_no, "end offset precedes start offset");
  if (static_cast<std::size_t>(end) > block.entry->source.size()) {
    throw ParseError(line_no, "span exceeds sentence length " + std::to_string(block.entry->source.size()));
  }
  Edit e;
  e.start = static_cast<std::size_t>(start);
  e.end = static_cast<std::size_t>(end);
  std::string_view repl = fields[2];
  if (repl != kNone) {
    std::string joined;
    for (const auto& w : split_whitespace(repl)) {
      if (!joined.empty()) joined += ' ';
      joined += w;
    }
    e.replacement = std::move(joined);
  }
  e.type_label = std::string(fields[1]);
  ann.edits.push_back(std::move(e));
}

}  // namespace

std::vector<M2Entry> parse_m2(std::istream& in) {
  std::vector<M2Entry> out;
  BlockBuilder block;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) {
      block.finish(out);
      continue;
    }
    if (line[0] == 'S' && (line.size() == 1 || line[1] == ' ')) {
      block.finish(out);
      block.entry.emplace();
      block.entry->source = Sentence(split_whitespace(line.substr(1)));
    } else if (line[0] == 'A' && line.size() > 1 && line[1] == ' ') {
      if (!block.entry) throw ParseError(line_no, "annotation before any sentence line");
      parse_annotation(line, line_no, block);
    } else {
      throw ParseError(line_no, "expected a line starting with 'S ' or 'A '");
    }
  }
  if (in.bad()) throw IoError("read error while parsing M2");
  block.finish(out);
  return out;
}

std::vector<M2Entry> parse_m2(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_m2(in);
}

std::vector<M2Entry> read_m2_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open M2 file '" + path + "'");
  return parse_m2(in);
}

void write_m2(std::ostream& out, const std::vector<M2Entry>& entries) {
  for (const auto& entry : entries) {
    out << 'S';
    for (const auto& w : entry.source.words()) out << ' ' << w;
    out << '\n';
    for (const auto& ann : entry.annotators) {
      if (ann.edits.empty()) {
        out << "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" << ann.annotator_id << '\n';
        continue;
      }
      for (const auto& e : ann.edits) {
        out << "A " << e.start << ' ' << e.end << kSep << e.type_label << kSep
            << (e.replacement.empty() ? std::string(kNone) : e.replacement) << kSep << "REQUIRED"
            << kSep << kNone << kSep << ann.annotator_id << '\n';
      }
    }
    out << '\n';
  }
}

std::string write_m2(const std::vector<M2Entry>& entries) {
  std::ostringstream out;
  write_m2(out, entries);
  return out.str();
}

Sentence gold_corrected(const M2Entry& entry, std::size_t annotator_index) {
  if (entry.annotators.empty()) return entry.source;
  return apply_edits(entry.source, entry.annotators.at(annotator_index).edits);
}

}  // namespace lmgec
