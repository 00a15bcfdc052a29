#include "dla/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dla/common.hpp"

namespace dla {

// ---------------------------------------------------------------------- folds

std::vector<std::string> FoldAssignment::lexemes_in(std::size_t fold) const {
  std::vector<std::string> out;
  for (const auto& [lex, f] : fold_of)
    if (f == fold) out.push_back(lex);
  return out;
}

std::set<std::string> FoldAssignment::lexemes_outside(std::size_t fold) const {
  std::set<std::string> out;
  for (const auto& [lex, f] : fold_of)
    if (f != fold) out.insert(lex);
  return out;
}

namespace {

// Fisher-Yates over raw engine output: mt19937_64 is fully specified, so the
// permutation is the same on every standard library.
void shuffle(std::vector<std::string>& xs, std::mt19937_64& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(rng() % i);
    std::swap(xs[i - 1], xs[j]);
  }
}

}  // namespace

FoldAssignment stratified_folds(const SeedLexicon& lexicon, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error("stratified_folds: need at least 2 folds");
  const auto lexemes = lexicon.lexemes();
  if (lexemes.size() < n)
    throw Error("stratified_folds: " + std::to_string(n) + " folds exceed " + std::to_string(lexemes.size()) +
                " lexemes");

  std::map<std::string, std::vector<std::string>> by_type;
  for (const auto& e : lexicon.entries()) by_type[e.type.name].push_back(e.lexeme);
  std::vector<std::string> order;
  for (const auto& [name, _] : by_type) order.push_back(name);
  std::stable_sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    return by_type[a].size() < by_type[b].size();
  });

  std::mt19937_64 rng(seed);
  FoldAssignment fa;
  fa.n_folds = n;
  // capacity: every fold takes floor(N/n); the first N mod n folds to fill up
  // may take one more, so sizes never differ by more than one
  const std::size_t floor_size = lexemes.size() / n;
  const std::size_t n_large = lexemes.size() % n;
  std::size_t large = 0;
  std::vector<std::size_t> size(n, 0);
  std::map<std::string, std::vector<std::size_t>> type_count;
  for (const auto& name : order) type_count[name].assign(n, 0);

  for (const auto& name : order) {
    auto members = by_type[name];
    shuffle(members, rng);
    for (const auto& lex : members) {
      if (fa.fold_of.count(lex)) continue;
      const auto& tc = type_count[name];
      std::size_t best = n;
      for (std::size_t f = 0; f < n; ++f) {
        const bool open = size[f] < floor_size || (size[f] == floor_size && large < n_large);
        if (!open) continue;
        if (best == n || tc[f] < tc[best] || (tc[f] == tc[best] && size[f] < size[best])) best = f;
      }
      fa.fold_of[lex] = best;
      if (++size[best] == floor_size + 1) ++large;
      for (const auto& e : lexicon.entries_of(lex)) ++type_count[e.type.name][best];
    }
  }
  return fa;
}

// -------------------------------------------------------------------- metrics

PRF type_prf(const EntrySet& hypothesised, const EntrySet& gold) {
  std::size_t hit = 0;
  for (const auto& e : hypothesised) hit += gold.count(e);
  PRF r;
  r.precision = hypothesised.empty() ? 1.0 : static_cast<double>(hit) / hypothesised.size();
  r.recall = gold.empty() ? 1.0 : static_cast<double>(hit) / gold.size();
  const double s = r.precision + r.recall;
  r.fscore = s > 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
  return r;
}

void TreebankFreqs::set(const std::string& lexeme, const std::string& type, std::uint64_t count) {
  counts_[{lexeme, type}] = count;
}

std::uint64_t TreebankFreqs::get(const std::string& lexeme, const std::string& type) const {
  auto it = counts_.find({lexeme, type});
  return it == counts_.end() ? 0 : it->second;
}

TreebankFreqs load_treebank_freqs(std::istream& in, const SeedLexicon* gold, std::size_t* dropped) {
  TreebankFreqs freqs;
  std::size_t drop = 0;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 3) throw ParseError("treebank frequency line needs lexeme, type and count", lineno);
    long long c;
    try {
      c = parse_int(trim(f[2]));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (c < 0) throw ParseError("negative frequency", lineno);
    auto lex = to_lower(trim(f[0]));
    std::string type(trim(f[1]));
    if (gold) {
      auto it = gold->inventory().find(type);
      if (it == gold->inventory().end() || !gold->entries().count(LexicalEntry{lex, it->second})) {
        ++drop;
        continue;
      }
    }
    freqs.set(lex, type, static_cast<std::uint64_t>(c));
  }
  if (dropped) *dropped = drop;
  return freqs;
}

TreebankFreqs load_treebank_freqs_file(const std::string& path, const SeedLexicon* gold, std::size_t* dropped) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open treebank frequency file '" + path + "'");
  return load_treebank_freqs(in, gold, dropped);
}

double token_accuracy(const EntrySet& hypothesised, const EntrySet& gold, const TreebankFreqs& freqs) {
  std::uint64_t total = 0, covered = 0;
  for (const auto& e : gold) {
    auto f = freqs.get(e);
    total += f;
    if (hypothesised.count(e)) covered += f;
  }
  if (total == 0) throw Error("token_accuracy: zero gold token frequency");
  return static_cast<double>(covered) / static_cast<double>(total);
}

// --------------------------------------------------------------------- report

namespace {

EntrySet of_class(const EntrySet& s, std::optional<WordClass> wc) {
  if (!wc) return s;
  EntrySet out;
  for (const auto& e : s)
    if (e.type.word_class == *wc) out.insert(e);
  return out;
}

}  // namespace

std::vector<ReportRow> score_fold(const std::string& method, const std::string& fold, const EntrySet& hypothesised,
                                  const EntrySet& gold, const TreebankFreqs* freqs) {
  std::vector<ReportRow> rows;
  std::vector<std::optional<WordClass>> scopes(kWordClasses.begin(), kWordClasses.end());
  scopes.push_back(std::nullopt);
  for (const auto& scope : scopes) {
    auto h = of_class(hypothesised, scope);
    auto g = of_class(gold, scope);
    auto prf = type_prf(h, g);
    ReportRow r{method, scope ? std::string(tag(*scope)) : "all", fold, prf.precision, prf.recall, prf.fscore,
                std::nullopt, h.size(), g.size()};
    if (freqs) {
      std::uint64_t mass = 0;
      for (const auto& e : g) mass += freqs->get(e);
      if (mass > 0) r.token_accuracy = token_accuracy(h, g, *freqs);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

const ReportRow& EvaluationReport::row(const std::string& word_class, const std::string& fold) const {
  for (const auto& r : rows)
    if (r.word_class == word_class && r.fold == fold) return r;
  throw Error("report has no row for class '" + word_class + "', fold '" + fold + "'");
}

std::string EvaluationReport::to_json() const {
  nlohmann::json j;
  j["method"] = method;
  j["token_accuracy_definition"] = kTokenAccuracyDefinition;
  auto& arr = j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["method"] = r.method;
    o["word_class"] = r.word_class;
    o["fold"] = r.fold;
    o["precision"] = r.precision;
    o["recall"] = r.recall;
    o["fscore"] = r.fscore;
    o["token_accuracy"] = r.token_accuracy ? nlohmann::json(*r.token_accuracy) : nlohmann::json(nullptr);
    o["n_hypothesised"] = r.n_hypothesised;
    o["n_gold"] = r.n_gold;
    arr.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(const std::string& text) {
  EvaluationReport rep;
  try {
    auto j = nlohmann::json::parse(text);
    rep.method = j.at("method").get<std::string>();
    for (const auto& o : j.at("rows")) {
      ReportRow r;
      r.method = o.at("method").get<std::string>();
      r.word_class = o.at("word_class").get<std::string>();
      r.fold = o.at("fold").get<std::string>();
      r.precision = o.at("precision").get<double>();
      r.recall = o.at("recall").get<double>();
      r.fscore = o.at("fscore").get<double>();
      if (!o.at("token_accuracy").is_null()) r.token_accuracy = o.at("token_accuracy").get<double>();
      r.n_hypothesised = o.at("n_hypothesised").get<std::size_t>();
      r.n_gold = o.at("n_gold").get<std::size_t>();
      rep.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return rep;
}

std::string EvaluationReport::to_text() const {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-5s %-4s %9s %9s %9s %9s %8s %8s\n", "method", "class", "fold", "precision",
                "recall", "fscore", "tok_acc", "n_hyp", "n_gold");
  out << buf;
  for (const auto& r : rows) {
    char tok[32];
    if (r.token_accuracy)
      std::snprintf(tok, sizeof tok, "%9.4f", *r.token_accuracy);
    else
      std::snprintf(tok, sizeof tok, "%9s", "-");
    std::snprintf(buf, sizeof buf, "%-14s %-5s %-4s %9.4f %9.4f %9.4f %s %8zu %8zu\n", r.method.c_str(),
                  r.word_class.c_str(), r.fold.c_str(), r.precision, r.recall, r.fscore, tok, r.n_hypothesised,
                  r.n_gold);
    out << buf;
  }
  out << "# " << kTokenAccuracyDefinition << '\n';
  return out.str();
}

// ------------------------------------------------------------ cross-validation

EvaluationReport cross_validate(const std::string& method_name, const AcquisitionMethod& method,
                                const SeedLexicon& lexicon, const TreebankFreqs* freqs, std::size_t n,
                                std::uint64_t seed) {
  auto folds = stratified_folds(lexicon, n, seed);
  EvaluationReport rep;
  rep.method = method_name;
  EntrySet all_h;
  for (std::size_t f = 0; f < n; ++f) {
    auto train = lexicon.restrict_lexemes(folds.lexemes_outside(f));
    std::map<std::string, WordClassSet> targets;
    EntrySet gold;
    for (const auto& lex : folds.lexemes_in(f)) {
      targets[lex] = lexicon.word_classes(lex);
      for (const auto& e : lexicon.entries_of(lex)) gold.insert(e);
    }
    auto predicted = method(train, targets);
    EntrySet h;
    for (const auto& [lex, entries] : predicted) {
      if (!targets.count(lex)) throw Error("method predicted entries for a lexeme outside the fold");
      h.insert(entries.begin(), entries.end());
    }
    auto rows = score_fold(method_name, std::to_string(f), h, gold, freqs);
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    all_h.insert(h.begin(), h.end());
  }
  auto pooled = score_fold(method_name, "all", all_h, lexicon.entries(), freqs);
  rep.rows.insert(rep.rows.end(), pooled.begin(), pooled.end());
  return rep;
}

}  // namespace dla
