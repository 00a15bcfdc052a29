#include "dla/morph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <tuple>

#include "dla/common.hpp"

namespace dla {

// ------------------------------------------------------------ character n-grams

NgramCounts char_ngrams(std::string_view lemma, std::size_t n_min, std::size_t n_max, bool sentinels) {
  if (lemma.empty()) throw Error("char_ngrams: empty lemma");
  if (n_min < 1 || n_min > n_max) throw Error("char_ngrams: need 1 <= n_min <= n_max");
  std::string word;
  if (sentinels) word += kPrefixSentinel;
  word += lemma;
  if (sentinels) word += kSuffixSentinel;

  NgramCounts out;
  for (std::size_t n = n_min; n <= n_max && n <= word.size(); ++n)
    for (std::size_t i = 0; i + n <= word.size(); ++i) ++out[word.substr(i, n)];
  return out;
}

FeatureSpace build_ngram_space(const std::vector<std::string>& word_list, const NgramOptions& opts,
                               std::uint64_t min_freq, std::size_t cap) {
  if (word_list.empty()) throw Error("build_ngram_space: empty word list");
  if (cap < 1) throw Error("build_ngram_space: cap must be at least 1");

  struct Stat {
    std::uint64_t freq = 0;
    std::size_t lemmas = 0;
  };
  std::map<std::string, Stat> stats;
  for (const auto& w : word_list) {
    for (const auto& [g, n] : char_ngrams(w, opts)) {
      auto& s = stats[g];
      s.freq += n;
      s.lemmas += 1;
    }
  }

  // frequency filter
  std::map<std::size_t, std::vector<std::string>, std::greater<>> by_len;
  for (const auto& [g, s] : stats)
    if (s.freq >= min_freq) by_len[g.size()].push_back(g);

  // substring redundancy, longest first: a survivor knocks out every shorter
  // substring that has exactly its frequency
  std::set<std::string> removed;
  std::vector<std::string> survivors;
  for (const auto& [len, grams] : by_len) {
    for (const auto& g : grams) {
      if (removed.count(g)) continue;
      survivors.push_back(g);
      const auto f = stats[g].freq;
      for (std::size_t n = opts.n_min; n < len; ++n)
        for (std::size_t i = 0; i + n <= len; ++i) {
          auto sub = g.substr(i, n);
          auto it = stats.find(sub);
          if (it != stats.end() && it->second.freq == f) removed.insert(std::move(sub));
        }
    }
  }

  std::sort(survivors.begin(), survivors.end(), [&](const std::string& a, const std::string& b) {
    const auto& sa = stats[a];
    const auto& sb = stats[b];
    if (sa.lemmas != sb.lemmas) return sa.lemmas > sb.lemmas;
    if (sa.freq != sb.freq) return sa.freq > sb.freq;
    return a < b;
  });
  if (survivors.size() > cap) survivors.resize(cap);

  std::vector<FeatureKey> keys;
  keys.reserve(survivors.size());
  for (auto& g : survivors) keys.push_back({std::string(kNgramFeatureType), std::move(g)});
  return FeatureSpace(std::move(keys), cap, cap);
}

EventCounts ngram_events(const std::vector<std::string>& lemmas, const NgramOptions& opts) {
  EventCounts ev;
  for (const auto& w : lemmas) {
    std::uint64_t total = 0;
    for (const auto& [g, n] : char_ngrams(w, opts)) {
      ev.add(w, kNgramFeatureType, g, n);
      total += n;
    }
    ev.add_occurrence(w, total);
  }
  return ev;
}

// ------------------------------------------------------------- cluster lexicon

void ClusterLexicon::add_cluster(std::vector<ClusterMember> members) {
  if (members.empty()) throw Error("empty cluster");
  const std::size_t idx = clusters_.size();
  for (const auto& m : members) {
    auto& slots = index_[m.lemma];
    if (slots.empty() || slots.back() != idx) slots.push_back(idx);
  }
  clusters_.push_back(std::move(members));
}

const std::vector<std::size_t>& ClusterLexicon::clusters_of(const std::string& lemma) const {
  static const std::vector<std::size_t> kNone;
  auto it = index_.find(lemma);
  return it == index_.end() ? kNone : it->second;
}

std::vector<std::string> ClusterLexicon::lemmas() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [l, _] : index_) out.push_back(l);
  return out;
}

namespace {

std::optional<WordClass> cluster_class(std::string_view code) {
  if (code == "N") return WordClass::Noun;
  if (code == "V") return WordClass::Verb;
  if (code == "A") return WordClass::Adjective;
  if (code == "R") return WordClass::Adverb;
  return std::nullopt;
}

}  // namespace

ClusterLexicon load_cluster_lexicon(std::istream& in) {
  ClusterLexicon lex;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(chomp(raw));
    if (line.empty() || line.front() == '#') continue;
    std::vector<ClusterMember> members;
    for (auto tok : split_ws(line)) {
      auto us = tok.rfind('_');
      if (us == std::string_view::npos || us == 0)
        throw ParseError("cluster member '" + std::string(tok) + "' is not lemma_C", lineno);
      auto wc = cluster_class(tok.substr(us + 1));
      if (!wc) throw ParseError("unknown cluster word class in '" + std::string(tok) + "'", lineno);
      members.push_back({to_lower(tok.substr(0, us)), *wc});
    }
    lex.add_cluster(std::move(members));
  }
  return lex;
}

ClusterLexicon load_cluster_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open cluster lexicon '" + path + "'");
  return load_cluster_lexicon(in);
}

// -------------------------------------------------------------- transformations

std::string Transformation::render() const {
  std::string left(short_label(src_class));
  std::string right(short_label(tgt_class));
  for (const auto& op : ops) {
    auto& side = op.action == EditAction::Remove ? left : right;
    side += op.action == EditAction::Remove ? " -" : " +";
    side += op.affix;
    side += op.site == AffixSite::Prefix ? kPrefixSentinel : kSuffixSentinel;
  }
  return left + " -> " + right;
}

std::string Transformation::apply(std::string_view source) const {
  std::string w(source);
  for (const auto& op : ops) {
    if (op.action == EditAction::Remove) {
      bool ok = op.site == AffixSite::Prefix ? w.starts_with(op.affix) : w.ends_with(op.affix);
      if (!ok || op.affix.size() > w.size())
        throw Error("transformation '" + render() + "' does not apply to '" + std::string(source) + "'");
      if (op.site == AffixSite::Prefix)
        w.erase(0, op.affix.size());
      else
        w.erase(w.size() - op.affix.size());
    } else {
      if (op.site == AffixSite::Prefix)
        w.insert(0, op.affix);
      else
        w += op.affix;
    }
  }
  return w;
}

Transformation Transformation::inverse() const {
  Transformation inv{tgt_class, src_class, {}};
  auto pick = [&](AffixSite site, EditAction action) {
    for (const auto& op : ops)
      if (op.site == site && op.action == action) {
        EditOp flipped = op;
        flipped.action = action == EditAction::Add ? EditAction::Remove : EditAction::Add;
        inv.ops.push_back(flipped);
      }
  };
  pick(AffixSite::Prefix, EditAction::Add);
  pick(AffixSite::Suffix, EditAction::Add);
  pick(AffixSite::Prefix, EditAction::Remove);
  pick(AffixSite::Suffix, EditAction::Remove);
  return inv;
}

std::optional<Transformation> align_edit_ops(const ClusterMember& a, const ClusterMember& b) {
  const std::string& x = a.lemma;
  const std::string& y = b.lemma;
  // longest common substring; prefer the earliest start in the smaller lemma
  const bool x_first = x <= y;
  std::size_t best = 0, bx = 0, by = 0;
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : 0;
      const std::size_t len = cur[j];
      if (len == 0) continue;
      const std::size_t sx = i - len, sy = j - len;
      bool take = len > best;
      if (!take && len == best) {
        take = x_first ? std::tie(sx, sy) < std::tie(bx, by) : std::tie(sy, sx) < std::tie(by, bx);
      }
      if (take) {
        best = len;
        bx = sx;
        by = sy;
      }
    }
    std::swap(prev, cur);
  }
  if (best == 0) return std::nullopt;

  Transformation t{a.word_class, b.word_class, {}};
  auto push = [&](AffixSite site, EditAction act, std::string affix) {
    if (!affix.empty()) t.ops.push_back({site, act, std::move(affix)});
  };
  push(AffixSite::Prefix, EditAction::Remove, x.substr(0, bx));
  push(AffixSite::Suffix, EditAction::Remove, x.substr(bx + best));
  push(AffixSite::Prefix, EditAction::Add, y.substr(0, by));
  push(AffixSite::Suffix, EditAction::Add, y.substr(by + best));
  return t;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::optional<std::string> resolve_cluster_lemma(const std::string& lexeme, const ClusterLexicon& clusters,
                                                 const std::vector<std::string>& prefixes) {
  if (clusters.empty() || lexeme.empty()) return std::nullopt;
  if (clusters.contains(lexeme)) return lexeme;

  std::string dehyphen;
  for (char c : lexeme)
    if (c != '-') dehyphen += c;
  if (!dehyphen.empty() && clusters.contains(dehyphen)) return dehyphen;

  std::vector<std::string> ordered(prefixes);
  std::sort(ordered.begin(), ordered.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  for (const auto& p : ordered) {
    if (p.empty() || !dehyphen.starts_with(p) || dehyphen.size() == p.size()) continue;
    auto rest = dehyphen.substr(p.size());
    if (clusters.contains(rest)) return rest;
  }

  auto lemmas = clusters.lemmas();
  std::vector<std::size_t> dist(lemmas.size());
  const auto n = static_cast<std::int64_t>(lemmas.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) dist[i] = levenshtein(lexeme, lemmas[i]);
  // lemmas are sorted, so the first minimum is the lexicographically smallest
  auto best = std::min_element(dist.begin(), dist.end());
  return lemmas[static_cast<std::size_t>(best - dist.begin())];
}

std::vector<Transformation> derivational_features(const std::string& lexeme, const ClusterLexicon& clusters,
                                                  const WordClassSet& word_class_hint,
                                                  const std::vector<std::string>& prefixes) {
  std::vector<Transformation> out;
  auto resolved = resolve_cluster_lemma(lexeme, clusters, prefixes);
  if (!resolved) return out;

  const auto& idxs = clusters.clusters_of(*resolved);
  std::set<WordClass> present;
  for (auto ci : idxs)
    for (const auto& m : clusters.clusters()[ci])
      if (m.lemma == *resolved) present.insert(m.word_class);
  std::set<WordClass> use;
  for (auto wc : present)
    if (word_class_hint.count(wc)) use.insert(wc);
  if (use.empty()) use = present;

  for (auto ci : idxs) {
    const auto& cluster = clusters.clusters()[ci];
    for (const auto& src : cluster) {
      if (src.lemma != *resolved || !use.count(src.word_class)) continue;
      for (const auto& sister : cluster) {
        if (sister == src) continue;
        if (auto t = align_edit_ops(src, sister)) out.push_back(std::move(*t));
      }
    }
  }
  return out;
}

EventCounts derivational_events(const std::vector<std::string>& lexemes,
                                const std::map<std::string, WordClassSet>& hints, const ClusterLexicon& clusters,
                                const std::vector<std::string>& prefixes) {
  static const WordClassSet kNoHint;
  std::vector<EventCounts> shards(lexemes.size());
  const auto n = static_cast<std::int64_t>(lexemes.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& lex = lexemes[i];
    auto it = hints.find(lex);
    auto feats = derivational_features(lex, clusters, it == hints.end() ? kNoHint : it->second, prefixes);
    for (const auto& t : feats) shards[i].add(lex, kDerivFeatureType, t.render());
    if (!feats.empty()) shards[i].add_occurrence(lex, feats.size());
  }
  EventCounts ev;
  for (const auto& s : shards) ev.merge(s);
  return ev;
}

}  // namespace dla
