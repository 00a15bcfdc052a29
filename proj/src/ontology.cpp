#include "dla/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "dla/common.hpp"

namespace dla {

void Ontology::add_synset(Synset s) {
  if (s.id.empty()) throw Error("empty synset id");
  if (synsets_.count(s.id)) throw Error("duplicate synset id '" + s.id + "'");
  std::vector<std::string> uniq;
  for (auto& m : s.members) {
    auto lower = to_lower(m);
    if (std::find(uniq.begin(), uniq.end(), lower) == uniq.end()) uniq.push_back(std::move(lower));
  }
  s.members = std::move(uniq);
  for (const auto& m : s.members) sense_index_[{m, s.word_class}].push_back(s.id);
  auto id = s.id;
  synsets_.emplace(std::move(id), std::move(s));
}

void Ontology::add_hypernym(const std::string& child, const std::string& parent) {
  auto c = synsets_.find(child);
  auto p = synsets_.find(parent);
  if (c == synsets_.end() || p == synsets_.end())
    throw Error("dangling hypernym edge " + child + " -> " + parent);
  if (child == parent) throw Error("self-loop on synset '" + child + "'");
  if (c->second.word_class != p->second.word_class)
    throw Error("hypernym edge " + child + " -> " + parent + " crosses word classes");
  edges_.emplace(child, parent);
  up_[child].insert(parent);
  down_[parent].insert(child);
}

const Synset& Ontology::synset(const std::string& id) const {
  auto it = synsets_.find(id);
  if (it == synsets_.end()) throw Error("unknown synset '" + id + "'");
  return it->second;
}

const std::set<std::string>& Ontology::hypernyms(const std::string& id) const {
  static const std::set<std::string> kNone;
  auto it = up_.find(id);
  return it == up_.end() ? kNone : it->second;
}

const std::set<std::string>& Ontology::hyponyms(const std::string& id) const {
  static const std::set<std::string> kNone;
  auto it = down_.find(id);
  return it == down_.end() ? kNone : it->second;
}

const std::vector<std::string>& Ontology::senses(const std::string& lemma, WordClass wc) const {
  static const std::vector<std::string> kNone;
  auto it = sense_index_.find({lemma, wc});
  return it == sense_index_.end() ? kNone : it->second;
}

Ontology load_ontology(std::istream& synset_file, std::istream& edge_file) {
  Ontology onto;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(synset_file, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 3) throw ParseError("synset line needs id, class and members", lineno);
    Synset s{std::string(trim(f[0])), WordClass::Noun, {}};
    auto wc = try_parse_word_class(trim(f[1]));
    if (!wc) throw ParseError("unknown word class '" + std::string(f[1]) + "'", lineno);
    s.word_class = *wc;
    for (auto m : split_ws(f[2])) s.members.emplace_back(m);
    if (s.members.empty()) throw ParseError("synset without members", lineno);
    try {
      onto.add_synset(std::move(s));
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  lineno = 0;
  while (std::getline(edge_file, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 2) throw ParseError("edge line needs child and parent", lineno);
    try {
      onto.add_hypernym(std::string(trim(f[0])), std::string(trim(f[1])));
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return onto;
}

Ontology load_ontology_files(const std::string& synset_path, const std::string& edge_path) {
  std::ifstream s(synset_path);
  if (!s) throw Error("cannot open synset file '" + synset_path + "'");
  std::ifstream e(edge_path);
  if (!e) throw Error("cannot open edge file '" + edge_path + "'");
  return load_ontology(s, e);
}

NeighbourSet semantic_neighbours(const Ontology& onto, const std::string& sense, const std::string& target) {
  NeighbourSet out{sense, {}};
  const auto& syn = onto.synset(sense);
  out.neighbours.insert(syn.members.begin(), syn.members.end());
  for (const auto& id : onto.hypernyms(sense)) {
    const auto& m = onto.synset(id).members;
    out.neighbours.insert(m.begin(), m.end());
  }
  for (const auto& id : onto.hyponyms(sense)) {
    const auto& m = onto.synset(id).members;
    out.neighbours.insert(m.begin(), m.end());
  }
  out.neighbours.erase(target);
  return out;
}

namespace {

EntrySet vote_with_counts(const Ontology& onto, const std::string& lexeme, const WordClassSet& classes,
                          const SeedLexicon& train, const DefaultMap& defaults,
                          const std::map<std::string, std::size_t>& global) {
  EntrySet out;
  for (auto wc : classes) {
    bool voted = false;
    for (const auto& sense : onto.senses(lexeme, wc)) {
      std::map<std::string, std::size_t> tally;
      for (const auto& n : semantic_neighbours(onto, sense, lexeme).neighbours)
        for (const auto& e : train.entries_of(n))
          if (e.type.word_class == wc) ++tally[e.type.name];
      if (tally.empty()) continue;
      const std::string* best = nullptr;
      std::size_t best_votes = 0, best_global = 0;
      for (const auto& [name, votes] : tally) {  // name order: first wins final ties
        auto g = global.count(name) ? global.at(name) : 0;
        if (!best || votes > best_votes || (votes == best_votes && g > best_global)) {
          best = &name;
          best_votes = votes;
          best_global = g;
        }
      }
      out.insert(LexicalEntry{lexeme, train.inventory().at(*best)});
      voted = true;
    }
    if (!voted) {
      auto it = defaults.find(wc);
      out.insert(LexicalEntry{lexeme, it != defaults.end() ? it->second : erg_baseline_defaults().at(wc)});
    }
  }
  return out;
}

}  // namespace

EntrySet vote_entries(const Ontology& onto, const std::string& lexeme, const WordClassSet& classes,
                      const SeedLexicon& train, const DefaultMap& defaults) {
  return vote_with_counts(onto, lexeme, classes, train, defaults, train.type_counts());
}

std::map<std::string, EntrySet> vote_entries_batch(const Ontology& onto,
                                                   const std::map<std::string, WordClassSet>& targets,
                                                   const SeedLexicon& train, const DefaultMap& defaults) {
  const auto global = train.type_counts();
  std::vector<const std::pair<const std::string, WordClassSet>*> items;
  for (const auto& kv : targets) items.push_back(&kv);
  std::vector<EntrySet> results(items.size());
  const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i)
    results[i] = vote_with_counts(onto, items[i]->first, items[i]->second, train, defaults, global);
  std::map<std::string, EntrySet> out;
  for (std::size_t i = 0; i < items.size(); ++i) out.emplace(items[i]->first, std::move(results[i]));
  return out;
}

}  // namespace dla
