#include "lmgec/scorer.hpp"

#include <charconv>

#include "lmgec/error.hpp"
#include "lmgec/external_scorer.hpp"
#include "lmgec/ngram.hpp"

namespace lmgec {

std::vector<double> Scorer::score_batch(std::span<const Sentence> sentences) {
  std::vector<double> out;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    try {
      out.push_back(score(sentences[i]));
    } catch (const ScorerUnavailable&) {
      throw;
    } catch (const std::exception& e) {
      throw BatchError(i, e.what());
    }
  }
  return out;
}

double CachingScorer::score(const Sentence& s) {
  std::string key = s.text();
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  double value = inner_.score(s);
  std::lock_guard lock(mutex_);
  ++misses_;
  cache_.emplace(std::move(key), value);
  return value;
}

std::vector<double> CachingScorer::score_batch(std::span<const Sentence> sentences) {
  std::vector<double> out(sentences.size());
  std::vector<Sentence> missing;
  std::vector<std::size_t> where;
  {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (auto it = cache_.find(sentences[i].text()); it != cache_.end()) {
        ++hits_;
        out[i] = it->second;
      } else {
        missing.push_back(sentences[i]);
        where.push_back(i);
      }
    }
  }
  if (missing.empty()) return out;
  std::vector<double> fresh;
  try {
    fresh = inner_.score_batch(missing);
  } catch (const BatchError& e) {
    throw BatchError(where.at(e.index()), e.what());
  }
  std::lock_guard lock(mutex_);
  for (std::size_t k = 0; k < fresh.size(); ++k) {
    ++misses_;
    out[where[k]] = fresh[k];
    cache_.emplace(missing[k].text(), fresh[k]);
  }
  return out;
}

std::size_t CachingScorer::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t CachingScorer::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

ScorerSpec parse_scorer_spec(std::string_view spec) {
  ScorerSpec out;
  if (spec.starts_with("ngram:")) {
    out.kind = ScorerSpec::Kind::NGram;
    out.model_path = std::string(spec.substr(6));
    if (out.model_path.empty()) throw InputError("scorer spec 'ngram:' needs a model path");
    return out;
  }
  if (spec.starts_with("external:cmd:")) {
    out.kind = ScorerSpec::Kind::ExternalCommand;
    out.argv = split_whitespace(spec.substr(13));
    if (out.argv.empty()) throw InputError("scorer spec 'external:cmd:' needs a command");
    return out;
  }
  if (spec.starts_with("external:tcp:")) {
    out.kind = ScorerSpec::Kind::ExternalTcp;
    std::string_view rest = spec.substr(13);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw InputError("scorer spec 'external:tcp:' needs <host>:<port>");
    }
    out.host = std::string(rest.substr(0, colon));
    std::string_view port = rest.substr(colon + 1);
    unsigned int value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || value == 0 || value > 65535) {
      throw InputError("invalid TCP port '" + std::string(port) + "'");
    }
    out.port = static_cast<unsigned short>(value);
    return out;
  }
  throw InputError("unrecognized scorer spec '" + std::string(spec) +
                   "' (expected ngram:<path>, external:cmd:<argv>, external:tcp:<host>:<port>)");
}

std::unique_ptr<Scorer> make_scorer(const ScorerSpec& spec, const ExternalOptions& options) {
  switch (spec.kind) {
    case ScorerSpec::Kind::NGram:
      return std::make_unique<NGramScorer>(NGramModel::load_file(spec.model_path));
    case ScorerSpec::Kind::ExternalCommand:
      return ExternalScorer::spawn(spec.argv, options);
    case ScorerSpec::Kind::ExternalTcp:
      return ExternalScorer::connect(spec.host, spec.port, options);
  }
  throw InputError("unsupported scorer kind");
}

}  // namespace lmgec
