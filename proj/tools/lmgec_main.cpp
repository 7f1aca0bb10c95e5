#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lmgec/confusion.hpp"
#include "lmgec/error.hpp"
#include "lmgec/eval.hpp"
#include "lmgec/lexicon.hpp"
#include "lmgec/m2.hpp"
#include "lmgec/ngram.hpp"
#include "lmgec/scorer.hpp"
#include "lmgec/search.hpp"
#include "lmgec/sweep.hpp"

namespace {

using namespace lmgec;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitScorer = 3;

bool quiet = false;

void info(const std::string& msg) {
  if (!quiet) std::cerr << "lmgec: " << msg << '\n';
}

void warn(const std::string& msg) { std::cerr << "lmgec: warning: " << msg << '\n'; }

// $LMGEC_DATA_DIR, then the source tree, then <prefix>/share/lmgec next to the binary.
std::string default_data_dir() {
  if (const char* env = std::getenv("LMGEC_DATA_DIR"); env && *env) return env;
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_directory(LMGEC_DEFAULT_DATA_DIR, ec)) return LMGEC_DEFAULT_DATA_DIR;
  const auto exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const auto installed = exe.parent_path().parent_path() / "share" / "lmgec";
    if (fs::is_directory(installed, ec)) return installed.string();
  }
  return LMGEC_DEFAULT_DATA_DIR;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw InputError("cannot read " + path);
    in = &file;
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(*in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Sentence> to_sentences(const std::vector<std::string>& lines) {
  std::vector<Sentence> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.emplace_back(split_whitespace(l));
  return out;
}

/// stdout for "-", otherwise a file that must open.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

double parse_tau(const std::string& text) {
  if (text == "off" || text == "inf") return kTauOff;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0)) throw InputError("tau must be a number >= 0 or 'off', got '" + text + "'");
  return v;
}

std::string tau_label(double tau) {
  if (std::isinf(tau)) return "off";
  std::ostringstream s;
  s << tau;
  return s.str();
}

bool parse_switch(const std::string& text, const char* what) {
  if (text == "on" || text == "true" || text == "1") return true;
  if (text == "off" || text == "false" || text == "0") return false;
  throw InputError(std::string(what) + " must be on or off");
}

struct ResourceArgs {
  std::string vocab;
  std::string inflections;
  std::string prepositions = default_data_dir() + "/prepositions.txt";
  std::string determiners = default_data_dir() + "/determiners.txt";
  std::string oov = "unk";
  bool ignore_case_vocab = false;
  std::size_t spell_distance = 2;
  std::size_t spell_suggestions = 10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--vocab", vocab, "Vocabulary file (word count per line)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--inflections", inflections, "AGID-style inflection file")->check(CLI::ExistingFile);
    cmd->add_option("--prepositions", prepositions, "Preposition inventory")->check(CLI::ExistingFile);
    cmd->add_option("--determiners", determiners, "Determiner inventory")->check(CLI::ExistingFile);
    cmd->add_option("--oov", oov, "Out-of-vocabulary inflections: unk or drop");
    cmd->add_flag("--vocab-ignore-case", ignore_case_vocab, "Case-insensitive vocabulary lookups");
    cmd->add_option("--spell-distance", spell_distance, "Maximum edit distance for spelling suggestions");
    cmd->add_option("--spell-suggestions", spell_suggestions, "Maximum spelling suggestions per word");
  }

  Lexicon load() const {
    Lexicon lex;
    lex.vocab = read_vocab_file(vocab, !ignore_case_vocab);
    if (inflections.empty()) {
      warn("no --inflections given; morphological candidates disabled");
    } else {
      lex.inflections = load_inflections_file(inflections);
      if (lex.inflections.skipped_lines() > 0) {
        info("skipped " + std::to_string(lex.inflections.skipped_lines()) + " inflection lines");
      }
    }
    lex.function_words = load_function_words(prepositions, determiners);
    return lex;
  }

  ConfusionConfig confusion() const {
    ConfusionConfig c;
    c.oov_policy = parse_oov_policy(oov);
    c.spell = SpellOptions{spell_distance, spell_suggestions};
    return c;
  }
};

struct ScorerArgs {
  std::string spec;
  double timeout = 30.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scorer", spec, "ngram:<model> | external:cmd:<argv> | external:tcp:<host>:<port>")
        ->required();
    cmd->add_option("--timeout", timeout, "Seconds to wait for an external scorer response");
  }

  std::unique_ptr<Scorer> make() const {
    const auto parsed = parse_scorer_spec(spec);
    try {
      return make_scorer(parsed, ExternalOptions{timeout});
    } catch (const IoError& e) {
      throw ScorerUnavailable(e.what());
    }
  }
};

struct SearchArgs {
  std::string tau = "0";
  int max_passes = 1;
  std::string batching = "on";
  int jobs = 1;

  void attach(CLI::App* cmd, bool with_tau) {
    if (with_tau) cmd->add_option("--tau", tau, "Acceptance margin in nats, or 'off'");
    cmd->add_option("--max-passes", max_passes, "Left-to-right sweeps per sentence")->check(CLI::PositiveNumber);
    cmd->add_option("--score-batching", batching, "Batch alternatives per position: on or off");
    cmd->add_option("--jobs,-j", jobs, "Sentences corrected in parallel")->check(CLI::PositiveNumber);
  }

  CorpusOptions corpus(const ResourceArgs& res) const {
    CorpusOptions o;
    o.search.tau = parse_tau(tau);
    o.search.max_passes = max_passes;
    o.search.batch_scoring = parse_switch(batching, "--score-batching");
    o.confusion = res.confusion();
    o.jobs = jobs;
    return o;
  }
};

struct EvalArgs {
  double beta = 0.5;
  std::size_t max_unchanged = kDefaultMaxUnchangedWords;
  bool ignore_case = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--beta", beta, "F-measure beta");
    cmd->add_option("--max-unchanged-words", max_unchanged, "Longest matched gap inside a merged edit");
    cmd->add_flag("--ignore-case", ignore_case, "Case-insensitive edit matching");
  }

  EvalOptions options() const { return EvalOptions{beta, max_unchanged, MatchOptions{ignore_case}}; }
};

void write_tsv_header(std::ostream& out) { out << "tau\ttp\tfp\tfn\tP\tR\tF0.5\n"; }

void write_tsv_row(std::ostream& out, const std::string& tau, const EvalCounts& c, double p, double r, double f) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "\t%llu\t%llu\t%llu\t%.4f\t%.4f\t%.4f\n", static_cast<unsigned long long>(c.tp),
                static_cast<unsigned long long>(c.fp), static_cast<unsigned long long>(c.fn), p, r, f);
  out << tau << buf;
}

// ---- build-vocab -------------------------------------------------------

struct BuildVocabArgs {
  std::string corpus;
  std::uint64_t min_count = 1;
  std::string out = "-";
};

int run_build_vocab(const BuildVocabArgs& a) {
  std::vector<std::string> tokens;
  for (const auto& line : read_lines(a.corpus)) {
    for (auto& t : split_whitespace(line)) tokens.push_back(std::move(t));
  }
  if (tokens.empty()) warn(a.corpus + " contains no tokens; writing an empty vocabulary");
  const auto vocab = build_vocab(tokens, a.min_count);
  Output out(a.out);
  write_vocab(out.stream(), vocab);
  info("vocabulary: " + std::to_string(vocab.size()) + " words from " + std::to_string(tokens.size()) + " tokens");
  return kExitOk;
}

// ---- train-lm ----------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  int order = 3;
  std::string smoothing = "kn";
  double discount = 0.75;
  std::uint64_t min_count = 1;
  std::string out;
  std::string dump;
};

int run_train(const TrainArgs& a) {
  NGramOptions o;
  o.order = a.order;
  o.min_count = a.min_count;
  o.discount = a.discount;
  if (a.smoothing == "kn") {
    o.smoothing = Smoothing::KneserNey;
  } else if (a.smoothing == "mle") {
    o.smoothing = Smoothing::Mle;
  } else {
    throw InputError("--smoothing must be kn or mle");
  }
  const auto model = train_ngram(to_sentences(read_lines(a.corpus)), o);
  model.save_file(a.out);
  if (!a.dump.empty()) {
    Output d(a.dump);
    model.dump_text(d.stream());
  }
  info("trained " + std::to_string(a.order) + "-gram model over " + std::to_string(model.vocab_size()) +
       " word types");
  return kExitOk;
}

// ---- correct -----------------------------------------------------------

struct CorrectArgs {
  std::string input = "-";
  std::string format = "text";
  std::string out = "-";
  std::string edit_log;
  ResourceArgs res;
  ScorerArgs scorer;
  SearchArgs search;
};

int run_correct(const CorrectArgs& a) {
  std::vector<Sentence> sources;
  if (a.format == "m2") {
    for (auto& e : read_m2_file(a.input)) sources.push_back(std::move(e.source));
  } else if (a.format == "text") {
    sources = to_sentences(read_lines(a.input));
  } else {
    throw InputError("--format must be text or m2");
  }
  const auto options = a.search.corpus(a.res);
  const auto lex = a.res.load();
  auto scorer = a.scorer.make();
  info("correcting " + std::to_string(sources.size()) + " sentences with " + scorer->describe() +
       ", tau=" + tau_label(options.search.tau));

  const auto report = correct_corpus(sources, lex, *scorer, options);

  Output out(a.out);
  for (const auto& e : report.entries) out.stream() << e.result.corrected.text() << '\n';

  if (!a.edit_log.empty()) {
    Output log(a.edit_log);
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
      const auto& e = report.entries[i];
      if (e.error) {
        log.stream() << nlohmann::json{{"line", i + 1}, {"error", *e.error}}.dump() << '\n';
        continue;
      }
      for (const auto& ap : e.result.applied) {
        nlohmann::json j{{"line", i + 1},
                         {"start", ap.edit.start},
                         {"end", ap.edit.end},
                         {"original", e.result.original[ap.edit.start]},
                         {"replacement", ap.edit.replacement},
                         {"category", ap.edit.type_label},
                         {"score_before", ap.score_before},
                         {"score_after", ap.score_after}};
        if (!std::isinf(options.search.tau)) j["tau"] = options.search.tau;
        log.stream() << j.dump() << '\n';
      }
    }
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    if (report.entries[i].error) warn("line " + std::to_string(i + 1) + ": " + *report.entries[i].error);
  }
  info(std::to_string(report.edits) + " edits applied");
  if (report.failed > 0) warn(std::to_string(report.failed) + " sentence(s) passed through after scorer errors");
  return kExitOk;
}

// ---- evaluate ----------------------------------------------------------

struct EvaluateArgs {
  std::string hyp;
  std::string gold;
  std::string tau = "-";
  std::string per_sentence;
  EvalArgs eval;
};

int run_evaluate(const EvaluateArgs& a) {
  const auto gold = read_m2_file(a.gold);
  const auto hyps = to_sentences(read_lines(a.hyp));
  if (hyps.size() != gold.size()) {
    throw InputError("hypothesis has " + std::to_string(hyps.size()) + " lines but gold has " +
                     std::to_string(gold.size()) + " sentences");
  }
  const auto r = evaluate_m2(gold, hyps, a.eval.options());
  write_tsv_header(std::cout);
  write_tsv_row(std::cout, a.tau, r.counts, r.precision, r.recall, r.f);
  char summary[200];
  std::snprintf(summary, sizeof summary, "%zu sentences: precision %.2f%%, recall %.2f%%, F%.2g %.2f%%",
                hyps.size(), 100 * r.precision, 100 * r.recall, a.eval.beta, 100 * r.f);
  std::cerr << summary << '\n';
  if (!a.per_sentence.empty()) {
    Output ps(a.per_sentence);
    for (std::size_t i = 0; i < r.sentences.size(); ++i) ps.stream() << sentence_eval_json(r.sentences[i], i) << '\n';
  }
  return kExitOk;
}

// ---- sweep-tau ---------------------------------------------------------

struct SweepArgs {
  std::string dev;
  std::vector<std::string> taus{"0", "2", "4", "6", "8"};
  ResourceArgs res;
  ScorerArgs scorer;
  SearchArgs search;
  EvalArgs eval;
};

int run_sweep(const SweepArgs& a) {
  std::vector<double> taus;
  for (const auto& t : a.taus) taus.push_back(parse_tau(t));
  if (taus.empty()) throw InputError("--taus is empty");
  const auto dev = read_m2_file(a.dev);
  const auto options = a.search.corpus(a.res);
  const auto lex = a.res.load();
  auto scorer = a.scorer.make();
  const auto r = sweep_tau(dev, lex, *scorer, taus, options, a.eval.options());
  write_tsv_header(std::cout);
  for (const auto& row : r.rows) write_tsv_row(std::cout, tau_label(row.tau), row.counts, row.precision, row.recall, row.f);
  const auto& best = r.rows[r.best];
  write_tsv_row(std::cout, tau_label(best.tau), best.counts, best.precision, best.recall, best.f);
  info("best tau=" + tau_label(best.tau));
  return kExitOk;
}

// ---- score -------------------------------------------------------------

struct ScoreArgs {
  std::string input = "-";
  ScorerArgs scorer;
};

int run_score(const ScoreArgs& a) {
  const auto sentences = to_sentences(read_lines(a.input));
  auto scorer = a.scorer.make();
  const auto scores = scorer->score_batch(sentences);
  char buf[64];
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10f", scores[i]);
    std::cout << buf << '\t' << sentences[i].text() << '\n';
  }
  return kExitOk;
}

/// Effective options of one subcommand as a `[name]` section that
/// --config reads back. Unset optional paths are left out.
void dump_config(std::ostream& out, const CLI::App& cmd) {
  out << '[' << cmd.get_name() << "]\n";
  for (const CLI::Option* opt : cmd.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
      if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
    }
    if (value.empty()) continue;
    out << names.front() << '=' << '"' << value << '"' << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language-model based grammatical error correction"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", LMGEC_VERSION);
  app.set_config("--config", "", "Read options from an INI-style file ([subcommand] sections, key=value)");
  bool config_dump = false;
  app.add_flag("--config-dump", config_dump, "Print the effective configuration and exit")->configurable(false);
  app.add_flag("--quiet,-q", quiet, "Only print warnings and errors");
  app.require_subcommand(0, 1);

  BuildVocabArgs bv;
  auto* cmd_bv = app.add_subcommand("build-vocab", "Count tokens of a corpus into a vocabulary file");
  cmd_bv->add_option("--corpus", bv.corpus, "Tokenized corpus, one sentence per line")->required()->check(CLI::ExistingFile);
  cmd_bv->add_option("--min-count", bv.min_count, "Drop words seen fewer times")->check(CLI::PositiveNumber);
  cmd_bv->add_option("--out,-o", bv.out, "Output path ('-' for stdout)");

  TrainArgs tr;
  auto* cmd_tr = app.add_subcommand("train-lm", "Train an n-gram language model");
  cmd_tr->add_option("--corpus", tr.corpus, "Tokenized corpus, one sentence per line")->required()->check(CLI::ExistingFile);
  cmd_tr->add_option("--order", tr.order, "N-gram order")->check(CLI::Range(1, kMaxNGramOrder));
  cmd_tr->add_option("--smoothing", tr.smoothing, "kn or mle")->check(CLI::IsMember({"kn", "mle"}));
  cmd_tr->add_option("--discount", tr.discount, "Kneser-Ney absolute discount");
  cmd_tr->add_option("--min-count", tr.min_count, "Rarer words map to [UNK]")->check(CLI::PositiveNumber);
  cmd_tr->add_option("--out,-o", tr.out, "Binary model path")->required();
  cmd_tr->add_option("--dump", tr.dump, "Also write a text dump of the counts");

  CorrectArgs co;
  auto* cmd_co = app.add_subcommand("correct", "Correct tokenized sentences");
  cmd_co->add_option("--input,-i", co.input, "Input file ('-' for stdin)");
  cmd_co->add_option("--format", co.format, "text or m2")->check(CLI::IsMember({"text", "m2"}));
  cmd_co->add_option("--out,-o", co.out, "Corrected text ('-' for stdout)");
  cmd_co->add_option("--edit-log", co.edit_log, "JSON-lines log of applied edits");
  co.res.attach(cmd_co);
  co.scorer.attach(cmd_co);
  co.search.attach(cmd_co, true);

  EvaluateArgs ev;
  auto* cmd_ev = app.add_subcommand("evaluate", "Score hypotheses against M2 gold annotations");
  cmd_ev->add_option("--hyp", ev.hyp, "Hypothesis text, line-aligned with the gold")->required()->check(CLI::ExistingFile);
  cmd_ev->add_option("--gold", ev.gold, "Gold M2 file")->required()->check(CLI::ExistingFile);
  cmd_ev->add_option("--tau", ev.tau, "Label for the tau column");
  cmd_ev->add_option("--per-sentence", ev.per_sentence, "JSON-lines per-sentence report");
  ev.eval.attach(cmd_ev);

  SweepArgs sw;
  auto* cmd_sw = app.add_subcommand("sweep-tau", "Correct and evaluate a dev set for each tau");
  cmd_sw->add_option("--dev", sw.dev, "Dev M2 file")->required()->check(CLI::ExistingFile);
  cmd_sw->add_option("--taus", sw.taus, "Thresholds to try ('off' allowed)")->delimiter(',');
  sw.res.attach(cmd_sw);
  sw.scorer.attach(cmd_sw);
  sw.search.attach(cmd_sw, false);
  sw.eval.attach(cmd_sw);

  ScoreArgs sc;
  auto* cmd_sc = app.add_subcommand("score", "Print the log-probability of each input sentence");
  cmd_sc->add_option("--input,-i", sc.input, "Input file ('-' for stdin)");
  sc.scorer.attach(cmd_sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (config_dump) {
    const auto used = app.get_subcommands();
    if (used.empty()) {
      std::cerr << "lmgec: --config-dump needs a subcommand\n";
      return kExitInput;
    }
    dump_config(std::cout, *used.front());
    return kExitOk;
  }

  try {
    if (*cmd_bv) return run_build_vocab(bv);
    if (*cmd_tr) return run_train(tr);
    if (*cmd_co) return run_correct(co);
    if (*cmd_ev) return run_evaluate(ev);
    if (*cmd_sw) return run_sweep(sw);
    if (*cmd_sc) return run_score(sc);
    std::cerr << app.help();
    return kExitInput;
  } catch (const ScorerUnavailable& e) {
    std::cerr << "lmgec: scorer unavailable: " << e.what() << '\n';
    return kExitScorer;
  } catch (const ScorerError& e) {
    std::cerr << "lmgec: scorer error: " << e.what() << '\n';
    return kExitScorer;
  } catch (const lmgec::Error& e) {
    std::cerr << "lmgec: error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "lmgec: error: " << e.what() << '\n';
    return kExitInput;
  }
}
