#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dla/eval.hpp"
#include "dla/featurespace.hpp"
#include "dla/knn.hpp"
#include "dla/morph.hpp"
#include "dla/ontology.hpp"
#include "dla/syntax.hpp"

namespace dla {

enum class Method { Ngram, Deriv, SyntaxTagged, SyntaxChunked, SyntaxParsed, Ontology, Baseline };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
/// True for the methods that go through a feature matrix and the k-NN suite.
bool uses_features(Method m);

struct Hyperparameters {
  int k = 9;
  std::size_t top_n = 100;
  std::size_t per_type_cap = 50;
  std::size_t total_cap = 3900;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::uint64_t min_freq = 3;
  bool sentinels = false;
  std::size_t n_folds = 10;
  std::uint64_t seed = 0;
  std::size_t min_entries = 10;
  std::size_t max_sentence_length = 200;
  std::string coordination = "conj";
};

struct MethodResources {
  std::optional<std::vector<std::string>> word_list;
  std::optional<ClusterLexicon> clusters;
  std::optional<Corpus> corpus;
  std::optional<Ontology> ontology;
};

/// Reads one lemma per line (lowercased, blank and `#` lines skipped).
std::vector<std::string> load_word_list(std::istream& in);
std::vector<std::string> load_word_list_file(const std::string& path);

/// Throws when `m` lacks a resource it needs (or the corpus level does not match).
void check_resources(Method m, const MethodResources& res);

/// Feature matrix for a feature-based method. The space is selected over the
/// lexicon's lexemes; vectors cover the lexicon plus any word-list lemmas.
SparseMatrix extract_matrix(Method m, const MethodResources& res, const SeedLexicon& lexicon,
                            const Hyperparameters& hp);

/// k-NN suite over a fixed matrix, retrained on each training lexicon.
AcquisitionMethod feature_method(SparseMatrix matrix, const Hyperparameters& hp);
AcquisitionMethod ontology_method(Ontology onto);
/// Majority-class default for every pre-identified class.
AcquisitionMethod baseline_method();

AcquisitionMethod make_method(Method m, const MethodResources& res, const SeedLexicon& lexicon,
                              const Hyperparameters& hp);

}  // namespace dla
