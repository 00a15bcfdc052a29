#pragma once
// Brute-force reference computations used only by the tests. Each one follows
// the textbook definition directly and shares no code with the library paths
// it checks.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// Overlapping occurrence count of `needle` in `hay`.
inline std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

/// Character n-gram selection: frequency >= min_freq, drop n-grams with the same
/// frequency as a longer surviving n-gram containing them, keep the `cap` most
/// saturated (ties: frequency, then string).
inline std::set<std::string> ngram_space(const std::vector<std::string>& words, std::size_t n_min,
                                         std::size_t n_max, std::size_t min_freq, std::size_t cap,
                                         bool sentinels) {
  std::vector<std::string> wrapped;
  for (const auto& w : words) wrapped.push_back(sentinels ? "^" + w + "$" : w);
  std::set<std::string> cands;
  for (const auto& w : wrapped)
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t n = n_min; n <= n_max && i + n <= w.size(); ++n) cands.insert(w.substr(i, n));

  std::map<std::string, std::size_t> freq, sat;
  for (const auto& g : cands) {
    for (const auto& w : wrapped) {
      auto c = occurrences(w, g);
      freq[g] += c;
      sat[g] += c > 0;
    }
  }
  std::vector<std::string> frequent;
  for (const auto& g : cands)
    if (freq[g] >= min_freq) frequent.push_back(g);

  // decide longest first so "surviving" is well defined
  std::sort(frequent.begin(), frequent.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::vector<std::string> survivors;
  for (const auto& g : frequent) {
    bool shadowed = false;
    for (const auto& h : survivors)
      if (h.size() > g.size() && h.find(g) != std::string::npos && freq[h] == freq[g]) shadowed = true;
    if (!shadowed) survivors.push_back(g);
  }
  std::sort(survivors.begin(), survivors.end(), [&](const std::string& a, const std::string& b) {
    if (sat[a] != sat[b]) return sat[a] > sat[b];
    if (freq[a] != freq[b]) return freq[a] > freq[b];
    return a < b;
  });
  if (survivors.size() > cap) survivors.resize(cap);
  return {survivors.begin(), survivors.end()};
}

/// Gain ratio from an explicit joint table of (feature on?, label).
inline double gain_ratio(const std::vector<bool>& feature, const std::vector<bool>& label) {
  const double n = static_cast<double>(feature.size());
  double joint[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < feature.size(); ++i) joint[feature[i]][label[i]] += 1;
  auto h = [](std::initializer_list<double> ps) {
    double s = 0;
    for (double p : ps)
      if (p > 0) s -= p * std::log2(p);
    return s;
  };
  const double px1 = (joint[1][0] + joint[1][1]) / n, px0 = 1 - px1;
  const double py1 = (joint[0][1] + joint[1][1]) / n, py0 = 1 - py1;
  const double hy = h({py0, py1});
  const double hxy = h({joint[0][0] / n, joint[0][1] / n, joint[1][0] / n, joint[1][1] / n});
  const double hx = h({px0, px1});
  if (hx == 0) return 0.0;
  const double info = hy + hx - hxy;  // mutual information
  return std::max(0.0, info) / hx;
}

/// Plain k-NN vote over precomputed distances: full sort, take k, extend with
/// everything equal to the k-th distance; ties in the vote are negative.
inline std::pair<bool, double> knn_vote(const std::vector<double>& dist, const std::vector<bool>& labels, int k) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < dist.size(); ++i) order.emplace_back(dist[i], i);
  std::sort(order.begin(), order.end());
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  const double kth = order[take - 1].first;
  while (take < order.size() && order[take].first == kth) ++take;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < take; ++i) pos += labels[order[i].second];
  return {2 * pos > take, static_cast<double>(pos) / take};
}

/// Weighted, range-normalised absolute difference, computed from raw dense rows.
inline std::vector<double> knn_distances(const std::vector<std::vector<double>>& rows,
                                         const std::vector<double>& query, const std::vector<double>& weights) {
  const std::size_t width = weights.size();
  std::vector<double> lo(width), hi(width);
  for (std::size_t f = 0; f < width; ++f) {
    lo[f] = hi[f] = rows.empty() ? 0 : rows[0][f];
    for (const auto& r : rows) {
      lo[f] = std::min(lo[f], r[f]);
      hi[f] = std::max(hi[f], r[f]);
    }
  }
  std::vector<double> out;
  for (const auto& r : rows) {
    double d = 0;
    for (std::size_t f = 0; f < width; ++f) {
      double diff = std::fabs(query[f] - r[f]);
      double delta = hi[f] > lo[f] ? diff / (hi[f] - lo[f]) : (diff > 0 ? 1.0 : 0.0);
      d += weights[f] * delta;
    }
    out.push_back(d);
  }
  return out;
}

/// Ontology vote from flat tables. `synsets` is (id, class, members); `edges` is
/// (child, parent); `train` is (lexeme, type, class). Returns (type names) voted
/// for `lexeme` under `wc`, or empty when no sense produced a vote.
struct FlatSynset {
  std::string id;
  int word_class;
  std::vector<std::string> members;
};
struct FlatEntry {
  std::string lexeme, type;
  int word_class;
};

inline std::set<std::string> ontology_vote(const std::vector<FlatSynset>& synsets,
                                           const std::vector<std::pair<std::string, std::string>>& edges,
                                           const std::vector<FlatEntry>& train, const std::string& lexeme, int wc) {
  std::map<std::string, std::size_t> global;
  for (const auto& e : train) ++global[e.type];
  std::set<std::string> out;
  for (const auto& s : synsets) {
    if (s.word_class != wc || std::find(s.members.begin(), s.members.end(), lexeme) == s.members.end()) continue;
    std::set<std::string> related = {s.id};
    for (const auto& [c, p] : edges) {
      if (c == s.id) related.insert(p);
      if (p == s.id) related.insert(c);
    }
    std::set<std::string> neigh;
    for (const auto& t : synsets)
      if (related.count(t.id)) neigh.insert(t.members.begin(), t.members.end());
    neigh.erase(lexeme);
    std::map<std::string, std::size_t> tally;
    for (const auto& e : train)
      if (e.word_class == wc && neigh.count(e.lexeme)) ++tally[e.type];
    if (tally.empty()) continue;
    std::vector<std::string> names;
    for (const auto& [n, _] : tally) names.push_back(n);
    std::sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) {
      if (tally[a] != tally[b]) return tally[a] > tally[b];
      if (global[a] != global[b]) return global[a] > global[b];
      return a < b;
    });
    out.insert(names.front());
  }
  return out;
}

}  // namespace oracle
