#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dla/featurespace.hpp"
#include "dla/lexicon.hpp"

namespace dla {

// ------------------------------------------------------------ character n-grams

inline constexpr char kPrefixSentinel = '^';
inline constexpr char kSuffixSentinel = '$';
inline constexpr std::string_view kNgramFeatureType = "ngram";

struct NgramOptions {
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  bool sentinels = false;
};

using NgramCounts = std::map<std::string, std::uint64_t>;

/// All contiguous substrings of length n_min..n_max, with multiplicity.
/// With sentinels the lemma is wrapped as `^lemma$` first.
NgramCounts char_ngrams(std::string_view lemma, std::size_t n_min, std::size_t n_max, bool sentinels);
inline NgramCounts char_ngrams(std::string_view lemma, const NgramOptions& o) {
  return char_ngrams(lemma, o.n_min, o.n_max, o.sentinels);
}

/// Frequency filter, substring-redundancy filter, then saturation cap.
FeatureSpace build_ngram_space(const std::vector<std::string>& word_list, const NgramOptions& opts = {},
                               std::uint64_t min_freq = 3, std::size_t cap = 3900);

/// One event per n-gram occurrence; occurrences(lemma) is the number of n-grams emitted.
EventCounts ngram_events(const std::vector<std::string>& lemmas, const NgramOptions& opts = {});

// ------------------------------------------------------- derivational morphology

struct ClusterMember {
  std::string lemma;
  WordClass word_class = WordClass::Noun;

  friend bool operator==(const ClusterMember&, const ClusterMember&) = default;
  friend auto operator<=>(const ClusterMember&, const ClusterMember&) = default;
};

/// Clusters of derivationally related words. A member may sit in several clusters.
class ClusterLexicon {
 public:
  void add_cluster(std::vector<ClusterMember> members);

  const std::vector<std::vector<ClusterMember>>& clusters() const { return clusters_; }
  /// Cluster indices containing `lemma` under any word class.
  const std::vector<std::size_t>& clusters_of(const std::string& lemma) const;
  bool contains(const std::string& lemma) const { return index_.count(lemma) > 0; }
  /// Distinct lemmas, sorted.
  std::vector<std::string> lemmas() const;
  bool empty() const { return clusters_.empty(); }

 private:
  std::vector<std::vector<ClusterMember>> clusters_;
  std::map<std::string, std::vector<std::size_t>> index_;
};

/// One cluster per line, members `lemma_C` with C in {N,V,A,R}.
ClusterLexicon load_cluster_lexicon(std::istream& in);
ClusterLexicon load_cluster_lexicon_file(const std::string& path);

enum class AffixSite { Prefix, Suffix };
enum class EditAction { Add, Remove };

struct EditOp {
  AffixSite site = AffixSite::Suffix;
  EditAction action = EditAction::Add;
  std::string affix;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

/// Affix rewrite from one (lemma, class) to another. Ops are ordered:
/// prefix removal, suffix removal, prefix addition, suffix addition.
struct Transformation {
  WordClass src_class = WordClass::Noun;
  WordClass tgt_class = WordClass::Noun;
  std::vector<EditOp> ops;

  /// e.g. `N -ment$ -> N +r$`, `Adj -> Adj +un^`, `V -> N`.
  std::string render() const;
  /// Rewrites `source`; throws if a removal does not match.
  std::string apply(std::string_view source) const;
  Transformation inverse() const;

  friend bool operator==(const Transformation&, const Transformation&) = default;
};

/// Edit operations through the longest common contiguous stem, or nothing when
/// the lemmas share no character. When several stems tie, the earliest one in
/// the lexicographically smaller lemma wins, so align(a,b) and align(b,a) are inverses.
std::optional<Transformation> align_edit_ops(const ClusterMember& a, const ClusterMember& b);

std::size_t levenshtein(std::string_view a, std::string_view b);

inline const std::vector<std::string>& default_prefixes() {
  static const std::vector<std::string> kPrefixes = {"un", "re", "de", "dis", "anti", "non", "in", "im"};
  return kPrefixes;
}

/// Finds the cluster lemma standing in for `lexeme`: itself, else dehyphenated,
/// else with the longest known prefix stripped, else the closest lemma by edit
/// distance (ties: lexicographically smallest).
std::optional<std::string> resolve_cluster_lemma(const std::string& lexeme, const ClusterLexicon& clusters,
                                                 const std::vector<std::string>& prefixes = default_prefixes());

/// Transformations from the lexeme to each sister lexeme in its cluster(s).
std::vector<Transformation> derivational_features(const std::string& lexeme, const ClusterLexicon& clusters,
                                                  const WordClassSet& word_class_hint,
                                                  const std::vector<std::string>& prefixes = default_prefixes());

inline constexpr std::string_view kDerivFeatureType = "deriv";

/// Event table over rendered transformations. occurrences(lexeme) is the number
/// of transformations found for it.
EventCounts derivational_events(const std::vector<std::string>& lexemes,
                                const std::map<std::string, WordClassSet>& hints, const ClusterLexicon& clusters,
                                const std::vector<std::string>& prefixes = default_prefixes());

}  // namespace dla
