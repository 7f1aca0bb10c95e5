#include <algorithm>
#include <optional>

#include "lmgec/eval.hpp"

namespace lmgec {

namespace {

struct Atomic {
  std::size_t src_start, src_end, hyp_start, hyp_end;
};

std::vector<Atomic> atomic_edits(const Sentence& source, const Sentence& hypothesis) {
  std::vector<Atomic> out;
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<Atomic> run;
  for (AlignOp op : align_tokens(source, hypothesis)) {
    if (op == AlignOp::Match) {
      if (run) out.push_back(*run);
      run.reset();
      ++i;
      ++j;
      continue;
    }
    if (!run) run = Atomic{i, i, j, j};
    if (op != AlignOp::Insert) ++i;
    if (op != AlignOp::Delete) ++j;
    run->src_end = i;
    run->hyp_end = j;
  }
  if (run) out.push_back(*run);
  return out;
}

std::string join(const Sentence& s, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t k = from; k < to; ++k) {
    if (k > from) out += ' ';
    out += s[k];
  }
  return out;
}

std::string normalized(const std::string& text, bool ignore_case) {
  return ignore_case ? to_lower_ascii(text) : text;
}

}  // namespace

const LatticeArc* EditLattice::find(std::size_t first, std::size_t last) const {
  for (const auto& a : arcs) {
    if (a.first_atomic == first && a.last_atomic == last) return &a;
  }
  return nullptr;
}

std::vector<AlignOp> align_tokens(const Sentence& source, const Sentence& hypothesis) {
  const std::size_t n = source.size();
  const std::size_t m = hypothesis.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[i - 1][j - 1] + (source[i - 1] == hypothesis[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  std::vector<AlignOp> ops;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && source[i - 1] == hypothesis[j - 1] && d[i - 1][j - 1] == d[i][j]) {
      ops.push_back(AlignOp::Match);
      --i;
      --j;
    } else if (i > 0 && j > 0 && d[i - 1][j - 1] + 1 == d[i][j]) {
      ops.push_back(AlignOp::Substitute);
      --i;
      --j;
    } else if (i > 0 && d[i - 1][j] + 1 == d[i][j]) {
      ops.push_back(AlignOp::Delete);
      --i;
    } else {
      ops.push_back(AlignOp::Insert);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

EditLattice extract_lattice(const Sentence& source, const Sentence& hypothesis,
                            std::size_t max_unchanged_words) {
  EditLattice lattice{source, hypothesis, 0, {}};
  const auto atoms = atomic_edits(source, hypothesis);
  lattice.atomic_count = atoms.size();
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a; b < atoms.size(); ++b) {
      if (b > a && atoms[b].src_start - atoms[b - 1].src_end > max_unchanged_words) break;
      LatticeArc arc;
      arc.src_start = atoms[a].src_start;
      arc.src_end = atoms[b].src_end;
      arc.hyp_start = atoms[a].hyp_start;
      arc.hyp_end = atoms[b].hyp_end;
      arc.first_atomic = a;
      arc.last_atomic = b;
      arc.edit = Edit{arc.src_start, arc.src_end, join(hypothesis, arc.hyp_start, arc.hyp_end), {}};
      lattice.arcs.push_back(std::move(arc));
    }
  }
  return lattice;
}

bool edit_matches_gold(const Edit& edit, const Edit& gold, const MatchOptions& options) {
  return edit.start == gold.start && edit.end == gold.end &&
         normalized(edit.replacement, options.ignore_case) ==
             normalized(gold.replacement, options.ignore_case);
}

std::size_t count_gold_matches(std::span<const Edit> edits, std::span<const Edit> gold,
                               const MatchOptions& options) {
  std::size_t hits = 0;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    bool duplicate = false;
    for (std::size_t h = 0; h < g && !duplicate; ++h) {
      duplicate = edit_matches_gold(gold[g], gold[h], options);
    }
    if (duplicate) continue;
    if (std::any_of(edits.begin(), edits.end(),
                    [&](const Edit& e) { return edit_matches_gold(e, gold[g], options); })) {
      ++hits;
    }
  }
  return hits;
}

std::vector<Edit> maxmatch_select(const EditLattice& lattice, const GoldAnnotation& gold,
                                  const MatchOptions& options) {
  const std::size_t k = lattice.atomic_count;
  struct Best {
    std::size_t matches = 0;
    std::size_t count = 0;
    std::size_t first_last = 0;  // last atomic index of the first group
  };
  // best[i]: optimal partition of atomic edits [i, k).
  std::vector<Best> best(k + 1);
  std::vector<const LatticeArc*> arc_at(k * k, nullptr);
  for (const auto& a : lattice.arcs) arc_at[a.first_atomic * k + a.last_atomic] = &a;

  for (std::size_t i = k; i-- > 0;) {
    bool found = false;
    for (std::size_t j = i; j < k; ++j) {
      const LatticeArc* arc = arc_at[i * k + j];
      if (!arc) break;
      const bool hit = std::any_of(gold.edits.begin(), gold.edits.end(), [&](const Edit& g) {
        return edit_matches_gold(arc->edit, g, options);
      });
      const Best cand{best[j + 1].matches + (hit ? 1 : 0), best[j + 1].count + 1, j};
      if (!found || cand.matches > best[i].matches ||
          (cand.matches == best[i].matches && cand.count < best[i].count)) {
        best[i] = cand;
        found = true;
      }
    }
  }

  std::vector<Edit> out;
  for (std::size_t i = 0; i < k;) {
    const std::size_t j = best[i].first_last;
    out.push_back(arc_at[i * k + j]->edit);
    i = j + 1;
  }
  return out;
}

}  // namespace lmgec
