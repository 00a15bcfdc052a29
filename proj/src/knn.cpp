#include "dla/knn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "dla/common.hpp"
#include "dla/parallel.hpp"

namespace dla {

// --------------------------------------------------------------- instance base

std::vector<double> InstanceBase::project(const SparseVector& v) const {
  std::vector<double> q(width());
  for (std::size_t f = 0; f < width(); ++f) q[f] = dim_value(v, dims[f]);
  return q;
}

double InstanceBase::distance(std::span<const double> query, std::size_t i) const {
  const double* x = values.data() + i * width();
  double d = 0.0;
  for (std::size_t f = 0; f < width(); ++f) {
    const double range = hi[f] - lo[f];
    const double diff = std::fabs(query[f] - x[f]);
    d += weights[f] * (range > 0.0 ? diff / range : (diff > 0.0 ? 1.0 : 0.0));
  }
  return d;
}

InstanceBase build_instance_base(const std::vector<const SparseVector*>& vectors, const std::vector<bool>& labels,
                                 const std::vector<DimId>& dims, const std::vector<double>& weights) {
  if (vectors.size() != labels.size()) throw Error("instance base: vectors and labels differ in length");
  if (dims.size() != weights.size()) throw Error("instance base: dims and weights differ in length");
  for (double w : weights)
    if (!(w >= 0.0)) throw Error("instance base: weights must be non-negative");
  InstanceBase b;
  b.dims = dims;
  b.weights = weights;
  b.values.reserve(vectors.size() * dims.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (auto d : dims) b.values.push_back(dim_value(*vectors[i], d));
    b.labels.push_back(labels[i] ? 1 : 0);
  }
  b.lo.assign(dims.size(), 0.0);
  b.hi.assign(dims.size(), 0.0);
  for (std::size_t f = 0; f < dims.size(); ++f) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      double v = b.values[i * dims.size() + f];
      if (i == 0 || v < b.lo[f]) b.lo[f] = v;
      if (i == 0 || v > b.hi[f]) b.hi[f] = v;
    }
  }
  return b;
}

// ------------------------------------------------------------------ classify

Verdict classify_projected(const InstanceBase& base, std::span<const double> query, int k) {
  if (base.size() == 0) throw Error("classify: empty instance base");
  if (k < 1) throw Error("classify: k must be at least 1");
  const std::size_t n = base.size();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = base.distance(query, i);

  double cutoff;
  if (static_cast<std::size_t>(k) >= n) {
    cutoff = *std::max_element(dist.begin(), dist.end());
  } else {
    std::vector<double> tmp(dist);
    std::nth_element(tmp.begin(), tmp.begin() + (k - 1), tmp.end());
    cutoff = tmp[static_cast<std::size_t>(k - 1)];
  }
  std::size_t votes = 0, pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] <= cutoff) {
      ++votes;
      pos += base.labels[i] ? 1 : 0;
    }
  }
  return Verdict{2 * pos > votes, static_cast<double>(pos) / static_cast<double>(votes)};
}

Verdict classify(const InstanceBase& base, const SparseVector& query, int k) {
  return classify_projected(base, base.project(query), k);
}

std::vector<Verdict> classify_batch(const InstanceBase& base, const std::vector<const SparseVector*>& queries,
                                    int k) {
  if (base.size() == 0) throw Error("classify: empty instance base");
  if (k < 1) throw Error("classify: k must be at least 1");
  std::vector<Verdict> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) out[i] = classify(base, *queries[i], k);
  return out;
}

std::vector<Verdict> classify_batch_serial(const InstanceBase& base,
                                           const std::vector<const SparseVector*>& queries, int k) {
  std::vector<Verdict> out;
  out.reserve(queries.size());
  for (const auto* q : queries) out.push_back(classify(base, *q, k));
  return out;
}

// ------------------------------------------------------------------- training

ClassifierSuite train(const std::map<std::string, SparseVector>& vectors, const SeedLexicon& lexicon,
                      const std::set<LexicalType>& inventory, const TrainOptions& opts) {
  if (inventory.empty()) throw Error("train: empty lexical type inventory");
  if (lexicon.empty()) throw Error("train: empty training set");
  if (opts.k < 1) throw Error("train: k must be at least 1");

  const auto lexemes = lexicon.lexemes();
  std::vector<SparseVector> blanks;
  blanks.reserve(lexemes.size());
  std::vector<const SparseVector*> rows;
  for (const auto& lex : lexemes) {
    auto it = vectors.find(lex);
    if (it != vectors.end()) {
      rows.push_back(&it->second);
    } else {
      blanks.push_back(SparseVector{lex, {}, 0});
      rows.push_back(nullptr);
    }
  }
  for (std::size_t i = 0, b = 0; i < rows.size(); ++i)
    if (!rows[i]) rows[i] = &blanks[b++];

  std::vector<LexicalType> types(inventory.begin(), inventory.end());
  std::vector<TypeClassifier> built(types.size());
  std::exception_ptr failure;
  const auto nt = static_cast<std::int64_t>(types.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < nt; ++t) {
    try {
      const auto& type = types[t];
      std::vector<bool> labels(lexemes.size());
      std::size_t pos = 0;
      for (std::size_t i = 0; i < lexemes.size(); ++i) {
        labels[i] = lexicon.entries().count(LexicalEntry{lexemes[i], type}) > 0;
        pos += labels[i];
      }
      TypeClassifier tc{type, false, {}};
      if (pos == 0 || pos == lexemes.size()) {
        tc.degenerate = true;
      } else {
        auto ranking = rank_features(rows, labels);
        auto dims = take_top(ranking, opts.n_features);
        std::vector<double> weights;
        weights.reserve(dims.size());
        for (auto d : dims) weights.push_back(ranking.scores.at(d));
        tc.base = build_instance_base(rows, labels, dims, weights);
      }
      built[t] = std::move(tc);
    } catch (...) {
#pragma omp critical(dla_train_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ClassifierSuite suite;
  suite.k = opts.k;
  suite.defaults = majority_defaults(lexicon);
  for (auto& tc : built) {
    auto name = tc.type.name;
    suite.classifiers.emplace(std::move(name), std::move(tc));
  }
  return suite;
}

// ----------------------------------------------------------------- prediction

namespace {

void add_fallbacks(const ClassifierSuite& suite, const std::string& lexeme, const WordClassSet& classes,
                   EntrySet& out) {
  for (auto wc : classes) {
    bool hit = std::any_of(out.begin(), out.end(), [&](const LexicalEntry& e) { return e.type.word_class == wc; });
    if (!hit) {
      auto it = suite.defaults.find(wc);
      const auto& def = it != suite.defaults.end() ? it->second : erg_baseline_defaults().at(wc);
      out.insert(LexicalEntry{lexeme, def});
    }
  }
}

}  // namespace

EntrySet predict_entries(const ClassifierSuite& suite, const std::string& lexeme, const SparseVector& vector,
                         const WordClassSet& classes) {
  EntrySet out;
  for (const auto& [name, tc] : suite.classifiers) {
    if (!classes.count(tc.type.word_class) || tc.degenerate) continue;
    if (classify(tc.base, vector, suite.k).label) out.insert(LexicalEntry{lexeme, tc.type});
  }
  add_fallbacks(suite, lexeme, classes, out);
  return out;
}

std::map<std::string, EntrySet> predict_entries_batch(const ClassifierSuite& suite,
                                                      const std::map<std::string, WordClassSet>& targets,
                                                      const std::map<std::string, SparseVector>& vectors) {
  std::map<std::string, SparseVector> blanks;
  auto vec_of = [&](const std::string& lex) -> const SparseVector* {
    auto it = vectors.find(lex);
    if (it != vectors.end()) return &it->second;
    return &blanks.emplace(lex, SparseVector{lex, {}, 0}).first->second;
  };

  std::map<std::string, EntrySet> out;
  for (const auto& [lex, _] : targets) out[lex];
  for (const auto& [name, tc] : suite.classifiers) {
    if (tc.degenerate) continue;
    std::vector<std::string> who;
    std::vector<const SparseVector*> queries;
    for (const auto& [lex, classes] : targets) {
      if (!classes.count(tc.type.word_class)) continue;
      who.push_back(lex);
      queries.push_back(vec_of(lex));
    }
    if (queries.empty()) continue;
    auto verdicts = classify_batch(tc.base, queries, suite.k);
    for (std::size_t i = 0; i < who.size(); ++i)
      if (verdicts[i].label) out[who[i]].insert(LexicalEntry{who[i], tc.type});
  }
  for (const auto& [lex, classes] : targets) add_fallbacks(suite, lex, classes, out[lex]);
  return out;
}

// ------------------------------------------------------------------- model io

namespace {

constexpr std::string_view kMagic = "DLA-MODEL 1";

template <typename T, typename Fmt>
void write_row(std::ostream& out, std::string_view tag, const std::vector<T>& xs, Fmt fmt) {
  out << tag;
  for (const auto& x : xs) out << ' ' << fmt(x);
  out << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  std::vector<std::string_view> next(std::string_view expect_tag) {
    if (!std::getline(in_, line_)) throw ParseError("model file truncated before '" + std::string(expect_tag) + "'");
    ++lineno_;
    auto f = split_ws(chomp(line_));
    if (f.empty() || f[0] != expect_tag)
      throw ParseError("expected '" + std::string(expect_tag) + "'", lineno_);
    return f;
  }
  std::size_t line() const { return lineno_; }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t lineno_ = 0;
};

}  // namespace

void write_model(const ClassifierSuite& suite, std::ostream& out) {
  out << kMagic << '\n';
  out << "space " << (suite.space_fingerprint.empty() ? "-" : suite.space_fingerprint) << '\n';
  out << "k " << suite.k << '\n';
  out << "defaults " << suite.defaults.size() << '\n';
  for (const auto& [wc, t] : suite.defaults) out << "default " << tag(wc) << ' ' << t.name << '\n';
  out << "classifiers " << suite.classifiers.size() << '\n';
  auto num = [](double v) { return format_double(v); };
  for (const auto& [name, tc] : suite.classifiers) {
    const auto& b = tc.base;
    out << "classifier " << name << ' ' << tag(tc.type.word_class) << ' ' << (tc.degenerate ? "degenerate" : "base")
        << ' ' << b.width() << ' ' << b.size() << '\n';
    if (tc.degenerate) continue;
    write_row(out, "dims", b.dims, [](DimId d) { return std::to_string(d); });
    write_row(out, "weights", b.weights, num);
    write_row(out, "lo", b.lo, num);
    write_row(out, "hi", b.hi, num);
    for (std::size_t i = 0; i < b.size(); ++i) {
      out << "inst " << int(b.labels[i]);
      for (double v : b.row(i)) out << ' ' << num(v);
      out << '\n';
    }
  }
}

ClassifierSuite read_model(std::istream& in) {
  LineReader r(in);
  std::string magic;
  if (!std::getline(in, magic) || chomp(magic) != kMagic) throw ParseError("not a model file (bad header)", 1);
  // LineReader counts from the line after the header
  ClassifierSuite s;
  try {
    auto f = r.next("space");
    if (f.size() != 2) throw ParseError("malformed space line");
    s.space_fingerprint = f[1] == "-" ? "" : std::string(f[1]);
    f = r.next("k");
    s.k = static_cast<int>(parse_int(f.at(1)));
    f = r.next("defaults");
    auto nd = parse_int(f.at(1));
    for (long long i = 0; i < nd; ++i) {
      f = r.next("default");
      if (f.size() != 3) throw ParseError("malformed default line");
      auto wc = parse_word_class(f[1]);
      s.defaults[wc] = LexicalType{std::string(f[2]), wc};
    }
    f = r.next("classifiers");
    auto nc = parse_int(f.at(1));
    for (long long c = 0; c < nc; ++c) {
      f = r.next("classifier");
      if (f.size() != 6) throw ParseError("malformed classifier line");
      TypeClassifier tc;
      tc.type = LexicalType{std::string(f[1]), parse_word_class(f[2])};
      tc.degenerate = f[3] == "degenerate";
      auto width = static_cast<std::size_t>(parse_int(f[4]));
      auto rows = static_cast<std::size_t>(parse_int(f[5]));
      if (!tc.degenerate) {
        auto& b = tc.base;
        auto read_doubles = [&](std::string_view t, std::vector<double>& dst) {
          auto g = r.next(t);
          if (g.size() != width + 1) throw ParseError("wrong row width for '" + std::string(t) + "'");
          for (std::size_t i = 1; i < g.size(); ++i) dst.push_back(parse_double(g[i]));
        };
        auto g = r.next("dims");
        if (g.size() != width + 1) throw ParseError("wrong row width for 'dims'");
        for (std::size_t i = 1; i < g.size(); ++i) b.dims.push_back(static_cast<DimId>(parse_int(g[i])));
        read_doubles("weights", b.weights);
        read_doubles("lo", b.lo);
        read_doubles("hi", b.hi);
        for (std::size_t i = 0; i < rows; ++i) {
          auto h = r.next("inst");
          if (h.size() != width + 2) throw ParseError("wrong instance width");
          b.labels.push_back(h[1] == "1" ? 1 : 0);
          for (std::size_t j = 2; j < h.size(); ++j) b.values.push_back(parse_double(h[j]));
        }
      }
      auto name = tc.type.name;
      s.classifiers.emplace(std::move(name), std::move(tc));
    }
  } catch (const ParseError& e) {
    if (e.line()) throw;
    throw ParseError(e.what(), r.line() + 1);
  }
  return s;
}

}  // namespace dla
