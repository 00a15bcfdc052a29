#include "dla/featurespace.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <tuple>

#include "dla/common.hpp"
#include "dla/parallel.hpp"

namespace dla {

// ---------------------------------------------------------------- EventCounts

void EventCounts::add(std::string_view lexeme, std::string_view ftype, std::string_view instance,
                      std::uint64_t n) {
  auto it = counts_.find(lexeme);
  if (it == counts_.end()) it = counts_.emplace(std::string(lexeme), InstanceCounts{}).first;
  it->second[FeatureKey{std::string(ftype), std::string(instance)}] += n;
}

void EventCounts::add_occurrence(std::string_view lexeme, std::uint64_t n) {
  auto it = occurrences_.find(lexeme);
  if (it == occurrences_.end()) it = occurrences_.emplace(std::string(lexeme), 0).first;
  it->second += n;
}

void EventCounts::merge(const EventCounts& other) {
  for (const auto& [lex, inst] : other.counts_) {
    auto& mine = counts_[lex];
    for (const auto& [key, n] : inst) mine[key] += n;
  }
  for (const auto& [lex, n] : other.occurrences_) occurrences_[lex] += n;
}

std::uint64_t EventCounts::count(std::string_view lexeme, std::string_view ftype,
                                 std::string_view instance) const {
  auto it = counts_.find(lexeme);
  if (it == counts_.end()) return 0;
  auto jt = it->second.find(FeatureKey{std::string(ftype), std::string(instance)});
  return jt == it->second.end() ? 0 : jt->second;
}

std::uint64_t EventCounts::occurrences(std::string_view lexeme) const {
  auto it = occurrences_.find(lexeme);
  return it == occurrences_.end() ? 0 : it->second;
}

std::uint64_t EventCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& [_, inst] : counts_)
    for (const auto& [__, n] : inst) t += n;
  return t;
}

std::set<std::string> EventCounts::ftypes() const {
  std::set<std::string> out;
  for (const auto& [_, inst] : counts_)
    for (const auto& [key, __] : inst) out.insert(key.ftype);
  return out;
}

std::map<FeatureEvent, std::uint64_t> EventCounts::as_multiset() const {
  std::map<FeatureEvent, std::uint64_t> out;
  for (const auto& [lex, inst] : counts_)
    for (const auto& [key, n] : inst) out[FeatureEvent{lex, key.ftype, key.instance}] += n;
  return out;
}

// --------------------------------------------------------------- FeatureSpace

FeatureSpace::FeatureSpace(std::vector<FeatureKey> instances, std::size_t per_type_cap,
                           std::size_t total_cap)
    : instances_(std::move(instances)), per_type_cap_(per_type_cap), total_cap_(total_cap) {
  std::sort(instances_.begin(), instances_.end());
  instances_.erase(std::unique(instances_.begin(), instances_.end()), instances_.end());
  for (FeatureId i = 0; i < instances_.size(); ++i) index_.emplace(instances_[i], i);
}

std::optional<FeatureId> FeatureSpace::id(const FeatureKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::size_t> FeatureSpace::per_type_counts() const {
  std::map<std::string, std::size_t> out;
  for (const auto& k : instances_) ++out[k.ftype];
  return out;
}

std::string FeatureSpace::fingerprint() const {
  Fnv1a h;
  for (const auto& k : instances_) {
    h.update(k.ftype);
    h.update("\t");
    h.update(k.instance);
    h.update("\n");
  }
  return h.hex();
}

double dim_value(const SparseVector& v, DimId d) {
  auto it = v.values.find(feature_of(d));
  if (it == v.values.end()) return 0.0;
  return kind_of(d) == ValueKind::Raw ? static_cast<double>(it->second.raw) : it->second.rel;
}

// ------------------------------------------------------------ select_instances

namespace {

struct Candidate {
  FeatureKey key;
  std::size_t lexemes = 0;   // saturation numerator
  std::uint64_t total = 0;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.lexemes != b.lexemes) return a.lexemes > b.lexemes;
  if (a.total != b.total) return a.total > b.total;
  return a.key < b.key;
}

}  // namespace

FeatureSpace select_instances(const EventCounts& events, const std::set<std::string>& lexicon_lexemes,
                              std::size_t per_type_cap, std::size_t total_cap) {
  if (per_type_cap < 1 || total_cap < 1) throw Error("feature caps must be at least 1");
  std::map<FeatureKey, Candidate> stats;
  for (const auto& [lex, inst] : events.by_lexeme()) {
    if (!lexicon_lexemes.count(lex)) continue;
    for (const auto& [key, n] : inst) {
      if (n == 0) continue;
      auto& c = stats[key];
      c.key = key;
      c.lexemes += 1;
      c.total += n;
    }
  }

  std::map<std::string, std::vector<Candidate>> by_type;
  for (auto& [key, c] : stats) by_type[key.ftype].push_back(std::move(c));

  std::vector<Candidate> kept;
  for (auto& [_, cands] : by_type) {
    std::sort(cands.begin(), cands.end(), better);
    if (cands.size() > per_type_cap) cands.resize(per_type_cap);
    kept.insert(kept.end(), cands.begin(), cands.end());
  }
  std::sort(kept.begin(), kept.end(), better);
  if (kept.size() > total_cap) kept.resize(total_cap);

  std::vector<FeatureKey> keys;
  keys.reserve(kept.size());
  for (auto& c : kept) keys.push_back(std::move(c.key));
  return FeatureSpace(std::move(keys), per_type_cap, total_cap);
}

// ------------------------------------------------------------------ vectorize

std::map<std::string, SparseVector> vectorize(const EventCounts& events, const FeatureSpace& space) {
  std::vector<std::string> lexemes;
  for (const auto& [lex, _] : events.occurrences()) lexemes.push_back(lex);
  for (const auto& [lex, inst] : events.by_lexeme()) {
    if (events.occurrences(lex) == 0 && !inst.empty())
      throw Error("lexeme '" + lex + "' has feature events but zero recorded occurrences");
    if (events.occurrences(lex) == 0) lexemes.push_back(lex);
  }
  std::sort(lexemes.begin(), lexemes.end());

  std::vector<SparseVector> out(lexemes.size());
  const auto n = static_cast<std::int64_t>(lexemes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& lex = lexemes[i];
    SparseVector v;
    v.lexeme = lex;
    v.occurrences = events.occurrences(lex);
    auto it = events.by_lexeme().find(lex);
    if (it != events.by_lexeme().end()) {
      for (const auto& [key, raw] : it->second) {
        auto id = space.id(key);
        if (!id || raw == 0) continue;
        v.values[*id] = FeatureValue{raw, static_cast<double>(raw) / static_cast<double>(v.occurrences)};
      }
    }
    out[i] = std::move(v);
  }

  std::map<std::string, SparseVector> result;
  for (auto& v : out) {
    auto key = v.lexeme;
    result.emplace(std::move(key), std::move(v));
  }
  return result;
}

// -------------------------------------------------------------------- ranking

namespace {

double entropy2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
}

}  // namespace

double gain_ratio(std::size_t n, std::size_t n_pos, std::size_t n_on, std::size_t n_on_pos) {
  if (n == 0) return 0.0;
  const double N = static_cast<double>(n);
  const double split = entropy2(n_on / N);
  if (split <= 0.0) return 0.0;
  const std::size_t n_off = n - n_on;
  const std::size_t n_off_pos = n_pos - n_on_pos;
  double cond = 0.0;
  if (n_on) cond += (n_on / N) * entropy2(static_cast<double>(n_on_pos) / n_on);
  if (n_off) cond += (n_off / N) * entropy2(static_cast<double>(n_off_pos) / n_off);
  const double gain = entropy2(n_pos / N) - cond;
  return std::max(0.0, gain) / split;
}

FeatureRanking rank_features(const std::vector<const SparseVector*>& vectors,
                             const std::vector<bool>& labels) {
  if (vectors.size() != labels.size()) throw Error("rank_features: vectors and labels differ in length");
  if (vectors.size() < 2) throw Error("rank_features: need at least two lexemes");
  std::size_t n_pos = std::count(labels.begin(), labels.end(), true);
  if (n_pos == 0 || n_pos == labels.size())
    throw Error("rank_features: degenerate labels (single class)");

  // presence is shared by the raw and rel dimension of an instance
  std::map<FeatureId, std::pair<std::size_t, std::size_t>> on;  // (n_on, n_on_pos)
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (const auto& [id, val] : vectors[i]->values) {
      if (val.raw == 0 && val.rel == 0.0) continue;
      auto& c = on[id];
      ++c.first;
      if (labels[i]) ++c.second;
    }
  }

  std::vector<std::pair<FeatureId, std::pair<std::size_t, std::size_t>>> items(on.begin(), on.end());
  std::vector<double> score(items.size());
  const auto m = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i)
    score[i] = gain_ratio(vectors.size(), n_pos, items[i].second.first, items[i].second.second);

  FeatureRanking r;
  std::vector<std::pair<double, DimId>> order;
  order.reserve(items.size() * 2);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (auto kind : {ValueKind::Raw, ValueKind::Rel}) {
      DimId d = dim_of(items[i].first, kind);
      r.scores[d] = score[i];
      order.emplace_back(score[i], d);
    }
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  r.order.reserve(order.size());
  for (const auto& [_, d] : order) r.order.push_back(d);
  return r;
}

FeatureRanking rank_features(const std::vector<SparseVector>& vectors,
                             const std::map<std::string, bool>& labels) {
  std::vector<const SparseVector*> ptrs;
  std::vector<bool> lab;
  for (const auto& v : vectors) {
    auto it = labels.find(v.lexeme);
    if (it == labels.end()) throw Error("rank_features: no label for '" + v.lexeme + "'");
    ptrs.push_back(&v);
    lab.push_back(it->second);
  }
  return rank_features(ptrs, lab);
}

std::vector<DimId> take_top(const FeatureRanking& ranking, std::size_t n) {
  if (n < 1) throw Error("take_top: n must be at least 1");
  auto k = std::min(n, ranking.order.size());
  return {ranking.order.begin(), ranking.order.begin() + static_cast<std::ptrdiff_t>(k)};
}

// ------------------------------------------------------------------ matrix io

void write_matrix(const SparseMatrix& m, std::ostream& out) {
  for (FeatureId id = 0; id < m.space.size(); ++id) {
    const auto& k = m.space.at(id);
    out << "#FEATURE " << id << '\t' << k.ftype << '\t' << k.instance << '\n';
  }
  out << "#CAPS " << m.space.per_type_cap() << '\t' << m.space.total_cap() << '\n';
  for (const auto& [lex, v] : m.vectors) out << "#OCC " << lex << '\t' << v.occurrences << '\n';
  for (const auto& [lex, v] : m.vectors) {
    out << lex << '\t';
    bool first = true;
    for (const auto& [id, val] : v.values) {
      if (!first) out << ' ';
      first = false;
      out << id << ':' << val.raw << ':' << format_double(val.rel);
    }
    out << '\n';
  }
}

SparseMatrix read_matrix(std::istream& in) {
  std::vector<FeatureKey> keys;
  std::size_t per_type = 50, total = 3900;
  std::map<std::string, std::uint64_t> occ;
  std::vector<std::pair<std::size_t, std::string>> data;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (line.empty()) continue;
    try {
      if (line.starts_with("#FEATURE ")) {
        auto f = split(line.substr(9), '\t');
        if (f.size() != 3) throw ParseError("malformed #FEATURE line", lineno);
        if (static_cast<std::size_t>(parse_int(f[0])) != keys.size())
          throw ParseError("feature ids must be dense and ordered", lineno);
        keys.push_back({std::string(f[1]), std::string(f[2])});
      } else if (line.starts_with("#CAPS ")) {
        auto f = split(line.substr(6), '\t');
        if (f.size() != 2) throw ParseError("malformed #CAPS line", lineno);
        per_type = static_cast<std::size_t>(parse_int(f[0]));
        total = static_cast<std::size_t>(parse_int(f[1]));
      } else if (line.starts_with("#OCC ")) {
        auto f = split(line.substr(5), '\t');
        if (f.size() != 2) throw ParseError("malformed #OCC line", lineno);
        occ[std::string(f[0])] = static_cast<std::uint64_t>(parse_int(f[1]));
      } else if (line.front() == '#') {
        continue;
      } else {
        data.emplace_back(lineno, std::string(line));
      }
    } catch (const ParseError& e) {
      if (e.line()) throw;
      throw ParseError(e.what(), lineno);
    }
  }

  SparseMatrix m;
  m.space = FeatureSpace(keys, per_type, total);
  if (m.space.size() != keys.size()) throw ParseError("duplicate feature instance in matrix header");
  for (const auto& [ln, line] : data) {
    try {
      auto tab = line.find('\t');
      if (tab == std::string::npos) throw ParseError("data line lacks a tab", ln);
      SparseVector v;
      v.lexeme = line.substr(0, tab);
      v.occurrences = occ.count(v.lexeme) ? occ[v.lexeme] : 0;
      for (auto cell : split_ws(std::string_view(line).substr(tab + 1))) {
        auto parts = split(cell, ':');
        if (parts.size() != 3) throw ParseError("malformed cell '" + std::string(cell) + "'", ln);
        auto id = static_cast<FeatureId>(parse_int(parts[0]));
        if (id >= m.space.size()) throw ParseError("feature id out of range", ln);
        v.values[id] = FeatureValue{static_cast<std::uint64_t>(parse_int(parts[1])), parse_double(parts[2])};
      }
      auto key = v.lexeme;
      m.vectors.emplace(std::move(key), std::move(v));
    } catch (const ParseError& e) {
      if (e.line()) throw;
      throw ParseError(e.what(), ln);
    }
  }
  return m;
}

}  // namespace dla
