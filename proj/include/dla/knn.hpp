#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dla/featurespace.hpp"
#include "dla/lexicon.hpp"

namespace dla {

/// IB1-style memory: dense rows over the selected value dimensions.
///
/// Distance between a query q and a stored instance x is
///   sum_f weight[f] * |q_f - x_f| / (hi[f] - lo[f])
/// with lo/hi the per-dimension extremes over the stored instances. A dimension
/// with hi == lo contributes weight[f] when the values differ and 0 otherwise.
struct InstanceBase {
  std::vector<DimId> dims;
  std::vector<double> weights;
  std::vector<double> lo, hi;
  std::vector<double> values;  // row-major, size() rows of dims.size()
  std::vector<char> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t width() const { return dims.size(); }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * width(), width()}; }
  /// Query values on the selected dimensions.
  std::vector<double> project(const SparseVector& v) const;
  double distance(std::span<const double> query, std::size_t i) const;

  friend bool operator==(const InstanceBase&, const InstanceBase&) = default;
};

InstanceBase build_instance_base(const std::vector<const SparseVector*>& vectors, const std::vector<bool>& labels,
                                 const std::vector<DimId>& dims, const std::vector<double>& weights);

struct Verdict {
  bool label = false;
  double score = 0.0;  // positive share of the neighbourhood

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// k-NN vote. Every instance at the k-th smallest distance joins the vote; a tied
/// vote is negative. Throws on an empty base or k < 1.
Verdict classify(const InstanceBase& base, const SparseVector& query, int k = 9);
Verdict classify_projected(const InstanceBase& base, std::span<const double> query, int k = 9);

/// Classifies many queries, OpenMP-parallel over queries.
std::vector<Verdict> classify_batch(const InstanceBase& base, const std::vector<const SparseVector*>& queries,
                                    int k = 9);
/// Same result as classify_batch, one query at a time on the calling thread.
std::vector<Verdict> classify_batch_serial(const InstanceBase& base,
                                           const std::vector<const SparseVector*>& queries, int k = 9);

struct TypeClassifier {
  LexicalType type;
  bool degenerate = false;  // single-class training labels: always negative
  InstanceBase base;

  friend bool operator==(const TypeClassifier&, const TypeClassifier&) = default;
};

/// One binary classifier per lexical type plus a default type per word class.
struct ClassifierSuite {
  std::map<std::string, TypeClassifier> classifiers;  // by type name
  DefaultMap defaults;
  std::string space_fingerprint;
  int k = 9;

  friend bool operator==(const ClassifierSuite&, const ClassifierSuite&) = default;
};

struct TrainOptions {
  std::size_t n_features = 100;
  int k = 9;
};

/// Trains a classifier for every type in `inventory` over all lexicon lexemes.
/// Lexemes without a vector train as all-zero signatures.
ClassifierSuite train(const std::map<std::string, SparseVector>& vectors, const SeedLexicon& lexicon,
                      const std::set<LexicalType>& inventory, const TrainOptions& opts = {});

/// Positive types among the classifiers of `classes`, plus the default for any
/// class that got no positive. Never empty for non-empty `classes`.
EntrySet predict_entries(const ClassifierSuite& suite, const std::string& lexeme, const SparseVector& vector,
                         const WordClassSet& classes);

/// predict_entries for many lexemes; each classifier runs one batch over the
/// lexemes whose classes include its word class. Missing vectors count as empty.
std::map<std::string, EntrySet> predict_entries_batch(const ClassifierSuite& suite,
                                                      const std::map<std::string, WordClassSet>& targets,
                                                      const std::map<std::string, SparseVector>& vectors);

/// Line-based model dump; doubles are written in shortest round-trip form.
void write_model(const ClassifierSuite& suite, std::ostream& out);
ClassifierSuite read_model(std::istream& in);

}  // namespace dla
