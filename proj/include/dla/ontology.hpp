#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dla/lexicon.hpp"

namespace dla {

struct Synset {
  std::string id;
  WordClass word_class = WordClass::Noun;
  std::vector<std::string> members;
};

/// WordNet-style sense inventory with direct hypernym links only.
class Ontology {
 public:
  void add_synset(Synset s);
  /// child -> parent. Both must exist, share a word class and differ.
  void add_hypernym(const std::string& child, const std::string& parent);

  const std::map<std::string, Synset>& synsets() const { return synsets_; }
  const Synset& synset(const std::string& id) const;
  bool has_synset(const std::string& id) const { return synsets_.count(id) > 0; }
  const std::set<std::pair<std::string, std::string>>& hypernym_edges() const { return edges_; }
  const std::set<std::string>& hypernyms(const std::string& id) const;
  const std::set<std::string>& hyponyms(const std::string& id) const;
  /// Senses of (lemma, class) in file order.
  const std::vector<std::string>& senses(const std::string& lemma, WordClass wc) const;

 private:
  std::map<std::string, Synset> synsets_;
  std::set<std::pair<std::string, std::string>> edges_;
  std::map<std::string, std::set<std::string>> up_, down_;
  std::map<std::pair<std::string, WordClass>, std::vector<std::string>> sense_index_;
};

/// Synset lines `id<TAB>class<TAB>lemma lemma ...`; edge lines `child<TAB>parent`.
Ontology load_ontology(std::istream& synset_file, std::istream& edge_file);
Ontology load_ontology_files(const std::string& synset_path, const std::string& edge_path);

struct NeighbourSet {
  std::string sense;
  std::set<std::string> neighbours;
};

/// Co-members of the sense plus members of its direct hypernyms and hyponyms,
/// minus the target itself.
NeighbourSet semantic_neighbours(const Ontology& onto, const std::string& sense, const std::string& target);

/// Per-sense plurality vote over the neighbours' gold types (same word class),
/// unioned across senses; classes without any vote get their default.
EntrySet vote_entries(const Ontology& onto, const std::string& lexeme, const WordClassSet& classes,
                      const SeedLexicon& train, const DefaultMap& defaults);

/// vote_entries for many lexemes, parallel per lexeme.
std::map<std::string, EntrySet> vote_entries_batch(const Ontology& onto,
                                                   const std::map<std::string, WordClassSet>& targets,
                                                   const SeedLexicon& train, const DefaultMap& defaults);

}  // namespace dla
