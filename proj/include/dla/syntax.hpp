#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dla/featurespace.hpp"

namespace dla {

enum class CorpusLevel { Tagged, Chunked, Parsed };

std::string_view level_name(CorpusLevel level);

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;
  std::optional<std::string> chunk_bio;
};

/// Head and dependent are 0-based token positions.
struct Dependency {
  std::string relation;
  std::size_t head = 0;
  std::size_t dep = 0;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<Dependency> deps;
};

struct CorpusOptions {
  std::size_t max_sentence_length = 200;
};

struct Corpus {
  CorpusLevel level = CorpusLevel::Tagged;
  std::vector<std::string> relations;  // dependency label inventory
  std::vector<Sentence> sentences;
  std::size_t skipped = 0;             // over-long sentences dropped
};

/// RASP-style default inventory of 14 grammatical relations.
const std::vector<std::string>& default_relations();
inline constexpr std::size_t kRelationCount = 14;
inline constexpr std::string_view kNull = "<NULL>";

/// Reads the column format for `level`. Tagged: `surface<TAB>lemma<TAB>pos`;
/// chunked adds `chunk_bio`; parsed adds `#DEP<TAB>rel<TAB>head<TAB>dep`
/// (1-based) lines after the tokens. Blank lines end sentences. An optional
/// `#RELATIONS a,b,...` line declares the label inventory.
Corpus parse_corpus(std::istream& in, CorpusLevel level, const CorpusOptions& opts = {});
Corpus parse_corpus_file(const std::string& path, CorpusLevel level, const CorpusOptions& opts = {});

/// The 39 feature-type identifiers for each preprocessor level.
std::vector<std::string> tagger_feature_types();
std::vector<std::string> chunker_feature_types();
std::vector<std::string> parser_feature_types(const std::vector<std::string>& relations = default_relations());

struct ExtractOptions {
  std::vector<std::string> relations = default_relations();
  std::string coordination = "conj";
};

/// Feature events for every token occurrence of a target lemma. Identical
/// (ftype, instance) pairs within one occurrence count once, so a raw count
/// never exceeds the lexeme's occurrence count.
EventCounts extract_tagger_features(const std::vector<Sentence>& sentences, const std::set<std::string>& targets);
EventCounts extract_chunker_features(const std::vector<Sentence>& sentences, const std::set<std::string>& targets);
EventCounts extract_parser_features(const std::vector<Sentence>& sentences, const std::set<std::string>& targets,
                                    const ExtractOptions& opts = {});

/// Dispatches on the corpus level (parser relations come from the corpus).
EventCounts extract_features(const Corpus& corpus, const std::set<std::string>& targets,
                             const std::string& coordination = "conj");

/// Single-threaded reference: folds sentences one at a time in order.
EventCounts extract_features_serial(const Corpus& corpus, const std::set<std::string>& targets,
                                    const std::string& coordination = "conj");

}  // namespace dla
