#include "dla/methods.hpp"

#include <fstream>
#include <istream>
#include <memory>

#include "dla/common.hpp"

namespace dla {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::Ngram, "ngram"},
    {Method::Deriv, "deriv"},
    {Method::SyntaxTagged, "syntax-tagged"},
    {Method::SyntaxChunked, "syntax-chunked"},
    {Method::SyntaxParsed, "syntax-parsed"},
    {Method::Ontology, "ontology"},
    {Method::Baseline, "baseline"},
};

CorpusLevel level_for(Method m) {
  switch (m) {
    case Method::SyntaxChunked: return CorpusLevel::Chunked;
    case Method::SyntaxParsed: return CorpusLevel::Parsed;
    default: return CorpusLevel::Tagged;
  }
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [mm, name] : kMethodNames)
    if (mm == m) return name;
  return "?";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames)
    if (n == name) return m;
  throw Error("unknown method '" + std::string(name) + "'");
}

bool uses_features(Method m) { return m != Method::Ontology && m != Method::Baseline; }

std::vector<std::string> load_word_list(std::istream& in) {
  std::vector<std::string> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(chomp(raw));
    if (line.empty() || line.front() == '#') continue;
    if (has_space(line)) throw ParseError("word list entries must be single tokens", lineno);
    out.push_back(to_lower(line));
  }
  return out;
}

std::vector<std::string> load_word_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list '" + path + "'");
  return load_word_list(in);
}

void check_resources(Method m, const MethodResources& res) {
  switch (m) {
    case Method::Ngram:
    case Method::Baseline: return;
    case Method::Deriv:
      if (!res.clusters) throw Error("method 'deriv' needs a cluster lexicon");
      return;
    case Method::SyntaxTagged:
    case Method::SyntaxChunked:
    case Method::SyntaxParsed:
      if (!res.corpus) throw Error("method '" + std::string(method_name(m)) + "' needs a corpus");
      if (res.corpus->level != level_for(m))
        throw Error("method '" + std::string(method_name(m)) + "' needs a " +
                    std::string(level_name(level_for(m))) + " corpus");
      return;
    case Method::Ontology:
      if (!res.ontology) throw Error("method 'ontology' needs synset and edge files");
      return;
  }
}

namespace {

std::vector<std::string> extraction_targets(const MethodResources& res, const SeedLexicon& lexicon) {
  std::set<std::string> all;
  for (const auto& l : lexicon.lexemes()) all.insert(l);
  if (res.word_list) all.insert(res.word_list->begin(), res.word_list->end());
  return {all.begin(), all.end()};
}

std::set<std::string> lexeme_set(const SeedLexicon& lexicon) {
  auto v = lexicon.lexemes();
  return {v.begin(), v.end()};
}

/// Drops instances whose total count over the lexicon lexemes is below `min_freq`.
EventCounts frequency_filter(const EventCounts& ev, const std::set<std::string>& lexemes, std::uint64_t min_freq) {
  std::map<FeatureKey, std::uint64_t> freq;
  for (const auto& [lex, inst] : ev.by_lexeme())
    if (lexemes.count(lex))
      for (const auto& [k, n] : inst) freq[k] += n;
  EventCounts out;
  for (const auto& [lex, inst] : ev.by_lexeme())
    for (const auto& [k, n] : inst)
      if (freq[k] >= min_freq) out.add(lex, k.ftype, k.instance, n);
  for (const auto& [lex, n] : ev.occurrences()) out.add_occurrence(lex, n);
  return out;
}

}  // namespace

SparseMatrix extract_matrix(Method m, const MethodResources& res, const SeedLexicon& lexicon,
                            const Hyperparameters& hp) {
  if (!uses_features(m)) throw Error("method '" + std::string(method_name(m)) + "' has no feature matrix");
  check_resources(m, res);
  if (lexicon.empty()) throw Error("feature extraction needs a non-empty lexicon");
  const auto targets = extraction_targets(res, lexicon);
  const auto lexemes = lexeme_set(lexicon);

  SparseMatrix mx;
  EventCounts events;
  switch (m) {
    case Method::Ngram: {
      NgramOptions opts{hp.n_min, hp.n_max, hp.sentinels};
      mx.space = build_ngram_space(lexicon.lexemes(), opts, hp.min_freq, hp.total_cap);
      events = ngram_events(targets, opts);
      break;
    }
    case Method::Deriv: {
      events = derivational_events(targets, lexicon.word_classes(), *res.clusters);
      events = frequency_filter(events, lexemes, hp.min_freq);
      mx.space = select_instances(events, lexemes, hp.total_cap, hp.total_cap);
      break;
    }
    default: {
      std::set<std::string> tset(targets.begin(), targets.end());
      events = extract_features(*res.corpus, tset, hp.coordination);
      mx.space = select_instances(events, lexemes, hp.per_type_cap, hp.total_cap);
      break;
    }
  }
  mx.vectors = vectorize(events, mx.space);
  return mx;
}

AcquisitionMethod feature_method(SparseMatrix matrix, const Hyperparameters& hp) {
  auto mx = std::make_shared<const SparseMatrix>(std::move(matrix));
  TrainOptions opts{hp.top_n, hp.k};
  return [mx, opts](const SeedLexicon& train_lex, const std::map<std::string, WordClassSet>& targets) {
    std::set<LexicalType> inventory;
    for (const auto& [_, t] : train_lex.inventory()) inventory.insert(t);
    auto suite = train(mx->vectors, train_lex, inventory, opts);
    suite.space_fingerprint = mx->space.fingerprint();
    return predict_entries_batch(suite, targets, mx->vectors);
  };
}

AcquisitionMethod ontology_method(Ontology onto) {
  auto o = std::make_shared<const Ontology>(std::move(onto));
  return [o](const SeedLexicon& train_lex, const std::map<std::string, WordClassSet>& targets) {
    return vote_entries_batch(*o, targets, train_lex, majority_defaults(train_lex));
  };
}

AcquisitionMethod baseline_method() {
  return [](const SeedLexicon& train_lex, const std::map<std::string, WordClassSet>& targets) {
    auto defaults = majority_defaults(train_lex);
    std::map<std::string, EntrySet> out;
    for (const auto& [lex, classes] : targets) {
      auto& s = out[lex];
      for (auto wc : classes) s.insert(LexicalEntry{lex, defaults.at(wc)});
    }
    return out;
  };
}

AcquisitionMethod make_method(Method m, const MethodResources& res, const SeedLexicon& lexicon,
                              const Hyperparameters& hp) {
  check_resources(m, res);
  if (m == Method::Baseline) return baseline_method();
  if (m == Method::Ontology) return ontology_method(*res.ontology);
  return feature_method(extract_matrix(m, res, lexicon, hp), hp);
}

}  // namespace dla
